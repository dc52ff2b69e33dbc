#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "espsim/liouvillian.hpp"

namespace espsim {

// Sampled solution of the master equation; states are Hermitized density
// matrices at the sample times.
struct Trajectory {
    std::vector<double> times;          // [us]
    std::vector<ComplexMatrix> states;
};

enum class SteadyMethod { NullSpace, LongTime };

struct SteadyState {
    ComplexMatrix rho;
    SteadyMethod method = SteadyMethod::NullSpace;
    double residual = 0.0;  // ||apply_rhs(rho)||_inf
};

// Fixed-step 4th-order propagation. Step is bounded by dt_max and by
// 0.05 / (fastest rate in the generator); samples are n_samples+1 uniform
// points including t=0 and t_end.
Trajectory propagate(const Liouvillian& L, const ComplexMatrix& rho0,
                     double t_end, double dt_max, int n_samples = 200);

struct SteadyOptions {
    double tolerance = 1e-8;     // relative residual target (scaled by max rate)
    double time_cap = 1e5;       // [us] cap for LongTime runs
    double sv_threshold = 1e-10; // null-space singular value cutoff (x sigma_max)
    double dt_max = 1e-3;        // [us] integrator bound for LongTime runs
    std::optional<SteadyMethod> method;  // default: NullSpace iff kappa > 0
};

// kappa > 0: unique trace-1 null vector of the assembled superoperator
// (LongTime selectable via opts.method, starting from rho0 or I/d).
// kappa = 0: long-time propagation from rho0 (required in that case).
SteadyState steady_state(const Liouvillian& L,
                         std::optional<ComplexMatrix> rho0 = std::nullopt,
                         const SteadyOptions& opts = {});

// Diagonal populations keyed b,a,c,e,x1..xn plus dressed populations D, B.
std::map<std::string, double> populations(const ComplexMatrix& rho,
                                          const HilbertSpace& space,
                                          const SystemParams& p);

}  // namespace espsim
