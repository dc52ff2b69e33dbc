#pragma once

#include <random>

#include "espsim/params.hpp"

namespace espsim::testutil {

// Fig. 2 parameter set: Omega_ca = Omega_ab = 2pi*10, Omega_cb = 2pi*6,
// Omega_ce = 2pi*20, gamma = 2pi*10 rad/us, delta = delta0, Delta = Delta_e = 0,
// n = 1.
inline SystemParams fig2_params(double kappa_mhz = 0.0) {
    SystemParams p;
    p.omega_ca = mhz_to_angular(10.0);
    p.omega_ab = mhz_to_angular(10.0);
    p.omega_cb = mhz_to_angular(6.0);
    p.omega_ce = mhz_to_angular(20.0);
    p.gamma = mhz_to_angular(10.0);
    p.kappa = mhz_to_angular(kappa_mhz);
    p.n = 1;
    p.delta = mhz_to_angular(16.0 / 3.0);  // delta0 for these amplitudes
    return p;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(987654321u);
    return gen;
}

inline SystemParams random_params(int n_max = 3) {
    std::uniform_real_distribution<double> amp(0.0, mhz_to_angular(20.0));
    std::uniform_real_distribution<double> det(-mhz_to_angular(10.0),
                                               mhz_to_angular(10.0));
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::uniform_int_distribution<int> leak(0, n_max);
    SystemParams p;
    p.omega_ab = amp(rng());
    p.omega_ca = amp(rng());
    p.omega_cb = amp(rng());
    p.omega_ce = amp(rng());
    p.phi_L = phase(rng());
    p.delta = det(rng());
    p.Delta = det(rng());
    p.Delta_e = det(rng());
    p.gamma = amp(rng());
    p.kappa = 0.1 * amp(rng());
    p.n = leak(rng());
    return p;
}

}  // namespace espsim::testutil
