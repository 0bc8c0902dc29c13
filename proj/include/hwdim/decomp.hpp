#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hwdim/rng.hpp"
#include "hwdim/spc.hpp"

namespace hwdim {

// Inverse-CDF sample of the exponential distribution conditioned to
// [theta1, theta2]: density lambda e^{-lambda y} / (e^{-lambda theta1} -
// e^{-lambda theta2}). Numerically stable for tiny lambda (tends to the
// uniform distribution).
double sample_texp(double lambda, double theta1, double theta2, CounterRng &rng);

enum class CenterKind { kHub, kTownCenter };

struct ShiftedCenter {
    Vertex center;
    CenterKind kind;
    double shift;     // delta_x
    double theta1;    // sampling interval, already scaled by r
    double theta2;
    int index;        // tie-breaking order: hubs first, then town centers, by id
};

struct PaddedPartition {
    double delta = 0;   // advertised strong-diameter bound
    double r = 0;       // working scale, delta / (6 (1+eps))
    double eps = 0;
    double lambda = 0;
    uint64_t seed = 0;
    std::vector<ShiftedCenter> centers;
    std::vector<int> assignment;             // vertex -> index into centers
    std::vector<VertexSet> clusters;         // one per center (possibly empty)
    ShortestPathCover spc;                   // minimalized cover behind the centers
    TownDecomposition towns;
    int sparsity = 0;                        // observed local sparsity s
};

// One sample of the shifted-starting-times clustering: centers are the
// minimal (r,eps)-SPC hubs plus all town centers, hub shifts drawn from
// Texp_[(1/2+2eps) r, (1+2eps) r], town-center shifts from
// Texp_[0, r/2], each vertex joins the center maximizing
// f_v(x) = shift_x - d(x,v) (ties by center index). lambda defaults to
// 4 (ln(2 s^2 + 1) + 1) with s the observed sparsity; pass
// lambda_override > 0 to pin it. Strong diameter <= delta is asserted.
PaddedPartition padded_decomposition(const DistanceProvider &dp, double delta,
                                     double eps, uint64_t seed,
                                     double lambda_override = 0);

struct PartitionViolation {
    std::string what;
    Vertex vertex = -1;
};

// Replays the partition: exact cover of V, every cluster induced-connected
// with strong diameter <= delta, every assignment a true argmax under the
// recorded shifts, and town-center clusters only contain their own town.
std::optional<PartitionViolation> verify_partition(const DistanceProvider &dp,
                                                   const PaddedPartition &p);

struct PaddingEstimate {
    double gamma = 0;
    double lambda = 0;
    double threshold = 0;         // e^{-4 gamma lambda}
    int trials = 0;
    std::vector<double> per_vertex;      // empirical padding frequency
    std::vector<double> lower_bound;     // one-sided 99% Wilson bound
    double min_probability = 0;
    double mean_probability = 0;
    double fraction_above_threshold = 0; // vertices whose lower bound clears it
};

// Monte Carlo padding estimate: fraction of trials in which
// ball(v, gamma r) stays inside v's cluster.
PaddingEstimate estimate_padding(const DistanceProvider &dp, double delta,
                                 double eps, double gamma, int trials,
                                 uint64_t seed, int threads = 1);

}  // namespace hwdim
