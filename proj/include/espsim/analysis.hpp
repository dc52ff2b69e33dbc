#pragma once

#include <functional>
#include <string>
#include <vector>

#include "espsim/dynamics.hpp"

namespace espsim {

// Steady populations per handedness tabulated over one parameter axis.
struct SweepResult {
    std::string axis_name;
    std::vector<double> axis_values;
    std::vector<double> P_a_L, P_b_L, P_c_L, P_e_L;
    std::vector<double> P_a_R, P_b_R, P_c_R, P_e_R;

    std::size_t size() const { return axis_values.size(); }
};

struct MixtureSpec {
    double f_L = 0.5;
    double f_R = 0.5;

    void validate() const {
        if (f_L < 0 || f_R < 0 || std::abs(f_L + f_R - 1.0) > 1e-12)
            throw ConfigError("mixture fractions must be non-negative and sum to 1");
    }
};

// Handedness-weighted observable curve over a delta grid.
struct MixtureCurve {
    std::vector<double> deltas;  // [rad/us]
    std::vector<double> P_a;
    std::vector<double> P_b;
};

struct DetectionReport {
    double peak_position_pos = 0.0;  // delta of the positive peak [rad/us]
    double peak_position_neg = 0.0;
    double peak_height_pos = 0.0;
    double peak_height_neg = 0.0;
    double f_L = 0.0;
    double f_R = 0.0;
    MixtureCurve curve;
};

// Steady-state populations vs collisional relaxation rate (all kappas > 0).
SweepResult sweep_kappa(const SystemParams& base, const std::vector<double>& kappas,
                        int jobs = 0);

// Steady-state ratios vs leakage count n (each n >= 1).
SweepResult sweep_n(const SystemParams& base, const std::vector<int>& ns,
                    int jobs = 0);

// Steady-state populations vs two-photon detuning delta.
SweepResult sweep_delta(const SystemParams& base, const std::vector<double>& deltas,
                        int jobs = 0);

// Steady-state populations vs laser detuning Delta_e.
SweepResult sweep_delta_e(const SystemParams& base,
                          const std::vector<double>& delta_es, int jobs = 0);

// P(delta) = f_L P^L(delta) + f_R P^R(delta); grids must match exactly.
MixtureCurve mixture_curve(const MixtureSpec& spec, const SweepResult& left,
                           const SweepResult& right);

// Two-peak estimator: the positive-delta peak is attributed to Left (phi_L = 0
// gauge), f_L = h+ / (h+ + h-). Peaks are strict local maxima; plateaus take
// the leftmost point.
DetectionReport estimate_fractions(const MixtureCurve& curve, double min_separation);

// eps = left_P / (left_P + right_P).
double purity(double left_P, double right_P);

// Uniform grid helper, endpoints included.
std::vector<double> linspace(double lo, double hi, int points);

// Runs fn(i) for i in [0, count) on up to `jobs` threads (0 = hardware).
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn);

}  // namespace espsim
