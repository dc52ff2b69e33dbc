#include "espsim/model.hpp"

#include <complex>

namespace espsim {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

ComplexMatrix build_hamiltonian3(const SystemParams& p, Handedness h) {
    p.validate();
    const HilbertSpace hs(p.n);
    const int d = hs.dim();
    ComplexMatrix H = ComplexMatrix::Zero(d, d);

    H(hs.idx_a, hs.idx_a) = p.delta;
    H(hs.idx_c, hs.idx_c) = p.Delta;

    H(hs.idx_c, hs.idx_a) = 0.5 * p.omega_ca;
    H(hs.idx_c, hs.idx_b) = 0.5 * p.omega_cb;
    H(hs.idx_a, hs.idx_b) = 0.5 * p.omega_ab * std::exp(kI * loop_phase(p, h));

    H(hs.idx_a, hs.idx_c) = std::conj(H(hs.idx_c, hs.idx_a));
    H(hs.idx_b, hs.idx_c) = std::conj(H(hs.idx_c, hs.idx_b));
    H(hs.idx_b, hs.idx_a) = std::conj(H(hs.idx_a, hs.idx_b));
    return H;
}

ComplexMatrix build_hamiltonian_full(const SystemParams& p, Handedness h) {
    const HilbertSpace hs(p.n);
    ComplexMatrix H = build_hamiltonian3(p, h);
    H(hs.idx_e, hs.idx_e) = p.Delta_e;
    H(hs.idx_c, hs.idx_e) = 0.5 * p.omega_ce;
    H(hs.idx_e, hs.idx_c) = 0.5 * p.omega_ce;
    return H;
}

std::pair<ComplexVector, ComplexVector> dressed_states(const SystemParams& p) {
    p.validate();
    const double z2 = p.omega_ca * p.omega_ca + p.omega_cb * p.omega_cb;
    if (z2 <= 0.0)
        throw DegenerateCoupling("dressed states undefined: Omega_ca = Omega_cb = 0");
    const double z = std::sqrt(z2);
    const HilbertSpace hs(p.n);
    const int d = hs.dim();

    ComplexVector D = ComplexVector::Zero(d);
    ComplexVector B = ComplexVector::Zero(d);
    D(hs.idx_a) = p.omega_cb / z;
    D(hs.idx_b) = -p.omega_ca / z;
    B(hs.idx_a) = p.omega_ca / z;
    B(hs.idx_b) = p.omega_cb / z;
    return {D, B};
}

double dressed_coupling(const SystemParams& p, Handedness h) {
    p.validate();
    const double z2 = p.omega_ca * p.omega_ca + p.omega_cb * p.omega_cb;
    if (z2 <= 0.0)
        throw DegenerateCoupling("dressed coupling undefined: Omega_ca = Omega_cb = 0");
    const double xi = xi_sign(p, h);
    return (p.delta * p.omega_cb * p.omega_ca +
            0.5 * xi * p.omega_ab *
                (p.omega_cb * p.omega_cb - p.omega_ca * p.omega_ca)) /
           z2;
}

double delta0(const SystemParams& p) {
    p.validate();
    if (p.omega_cb <= 0.0 || p.omega_ca <= 0.0)
        throw DegenerateCoupling("delta0 undefined: Omega_ca and Omega_cb must be positive");
    return p.omega_ab * (p.omega_ca * p.omega_ca - p.omega_cb * p.omega_cb) /
           (2.0 * p.omega_cb * p.omega_ca);
}

double dark_state_residual(const SystemParams& p, Handedness h) {
    auto [D, B] = dressed_states(p);
    const ComplexMatrix H = build_hamiltonian3(p, h);
    const ComplexVector HD = H * D;
    const std::complex<double> lambda = D.dot(HD);
    return (HD - lambda * D).norm();
}

}  // namespace espsim
