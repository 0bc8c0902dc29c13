#pragma once

#include <stdexcept>
#include <string>

namespace hwdim {

// Base error for the whole toolkit. CLI maps ParseError/ParamError to
// exit code 2, everything else to exit code 1.
struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    using Error::Error;
};

struct ParamError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

// A construction detected that one of its own guaranteed invariants does
// not hold (either an upstream bug or an invalid input slipped through).
struct InvariantError : Error {
    using Error::Error;
};

}  // namespace hwdim
