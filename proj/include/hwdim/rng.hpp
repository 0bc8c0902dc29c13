#pragma once

#include <cstdint>

namespace hwdim {

// Counter-based generator: a stream is addressed by the words mixed into
// it, so per-(seed, trial, center) draws are reproducible independently
// of evaluation order or thread count. splitmix64 finalizer.
class CounterRng {
  public:
    explicit CounterRng(uint64_t seed) : state_(mix(0x9e3779b97f4a7c15ULL ^ seed)) {}

    CounterRng derive(uint64_t word) const {
        CounterRng r(0);
        r.state_ = mix(state_ ^ mix(word + 0xbf58476d1ce4e5b9ULL));
        return r;
    }

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [0, n)
    uint64_t next_below(uint64_t n) { return next_u64() % n; }

  private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }
    uint64_t state_;
};

}  // namespace hwdim
