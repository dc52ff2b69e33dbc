#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "espsim/errors.hpp"

namespace espsim {

// All angular frequencies are stored in rad/us. Config files take plain MHz
// (ordinary frequency); mhz_to_angular does the 2*pi conversion on ingestion.
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline double mhz_to_angular(double mhz) { return kTwoPi * mhz; }
inline double angular_to_mhz(double w) { return w / kTwoPi; }

enum class Handedness { Left, Right };

inline const char* label(Handedness h) {
    return h == Handedness::Left ? "L" : "R";
}

// Control parameters of one enantiomer pair. Rabi amplitudes and rates are
// angular frequencies [rad/us]; time is in us throughout.
struct SystemParams {
    double omega_ab = 0.0;  // microwave a-b Rabi amplitude
    double omega_ca = 0.0;  // microwave c-a Rabi amplitude
    double omega_cb = 0.0;  // microwave c-b Rabi amplitude
    double omega_ce = 0.0;  // laser c-e Rabi amplitude
    double phi_L = 0.0;     // overall microwave phase [rad]
    double delta = 0.0;     // two-photon detuning delta = E_a - E_b - w1
    double Delta = 0.0;     // detuning Delta = E_c - E_b - w3
    double Delta_e = 0.0;   // laser detuning Delta_e = E_e - E_c - w4
    double gamma = 0.0;     // total spontaneous decay rate of |e>
    double kappa = 0.0;     // collisional relaxation rate
    int n = 0;              // number of leakage states x_1..x_n

    int dim() const { return n + 4; }

    void validate() const {
        if (omega_ab < 0 || omega_ca < 0 || omega_cb < 0 || omega_ce < 0)
            throw ConfigError("Rabi amplitudes must be non-negative");
        if (gamma < 0) throw ConfigError("gamma must be non-negative");
        if (kappa < 0) throw ConfigError("kappa must be non-negative");
        if (n < 0) throw ConfigError("leakage count n must be non-negative");
    }
};

// Phase of the a-b coupling for one handedness: phi_R = phi_L + pi.
inline double loop_phase(const SystemParams& p, Handedness h) {
    return h == Handedness::Left ? p.phi_L : p.phi_L + M_PI;
}

// Sign factor xi = e^{i phi_j} for phi_j in {0, pi} (mod 2*pi).
// Dark-state analytics are only derived in this gauge.
inline double xi_sign(const SystemParams& p, Handedness h) {
    double phi = std::fmod(loop_phase(p, h), kTwoPi);
    if (phi < 0) phi += kTwoPi;
    const double tol = 1e-9;
    if (phi < tol || phi > kTwoPi - tol) return 1.0;
    if (std::abs(phi - M_PI) < tol) return -1.0;
    throw UnsupportedPhase("phi_L must be 0 or pi for dark-state analysis");
}

// Fixed index layout shared by every module: b, a, c, e, x_1..x_n.
struct HilbertSpace {
    int n = 0;

    explicit HilbertSpace(int n_leak = 0) : n(n_leak) {
        if (n < 0) throw ConfigError("leakage count n must be non-negative");
    }

    int dim() const { return n + 4; }

    static constexpr int idx_b = 0;
    static constexpr int idx_a = 1;
    static constexpr int idx_c = 2;
    static constexpr int idx_e = 3;
    int idx_x(int k) const {  // k = 1..n
        if (k < 1 || k > n) throw DimensionMismatch("leakage index out of range");
        return 3 + k;
    }

    std::string state_label(int i) const {
        switch (i) {
            case idx_b: return "b";
            case idx_a: return "a";
            case idx_c: return "c";
            case idx_e: return "e";
            default:
                if (i >= 4 && i < dim()) return "x" + std::to_string(i - 3);
                throw DimensionMismatch("state index out of range");
        }
    }
};

}  // namespace espsim
