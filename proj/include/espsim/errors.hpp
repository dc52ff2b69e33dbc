#pragma once

#include <stdexcept>
#include <string>

namespace espsim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateCoupling : Error {
    using Error::Error;
};

struct UnsupportedPhase : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct CapExceeded : Error {
    using Error::Error;
};

struct StepSizeUnderflow : Error {
    using Error::Error;
};

struct NonUniqueSteadyState : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct GridMismatch : Error {
    using Error::Error;
};

struct PeaksNotFound : Error {
    using Error::Error;
};

struct AmbiguousPeaks : Error {
    using Error::Error;
};

struct UndefinedPurity : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace espsim
