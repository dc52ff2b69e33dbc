#include "espsim/liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <complex>

namespace espsim {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

std::vector<JumpOperator> build_jump_set(const SystemParams& p) {
    p.validate();
    const HilbertSpace hs(p.n);
    const double rate = p.gamma / static_cast<double>(p.n + 3);
    std::vector<JumpOperator> jumps;
    jumps.reserve(p.n + 3);
    for (int s : {hs.idx_c, hs.idx_a, hs.idx_b})
        jumps.push_back({hs.idx_e, s, rate});
    for (int k = 1; k <= p.n; ++k)
        jumps.push_back({hs.idx_e, hs.idx_x(k), rate});
    return jumps;
}

Liouvillian make_liouvillian(const SystemParams& p, Handedness h) {
    return {build_hamiltonian_full(p, h), build_jump_set(p), p.kappa, p.dim()};
}

ComplexMatrix dissipator_action(const ComplexMatrix& rho,
                                const std::vector<JumpOperator>& jumps) {
    const int d = static_cast<int>(rho.rows());
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (const auto& j : jumps) {
        // o = |to><from|: 2 o rho o^dag = 2 rho_ff |t><t|,
        // o^dag o = |f><f|.
        out(j.to_index, j.to_index) += j.rate * rho(j.from_index, j.from_index);
        out.row(j.from_index) -= 0.5 * j.rate * rho.row(j.from_index);
        out.col(j.from_index) -= 0.5 * j.rate * rho.col(j.from_index);
    }
    return out;
}

ComplexMatrix collision_action(const ComplexMatrix& rho, double kappa, int dim) {
    return kappa * (ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim) -
                    rho);
}

ComplexMatrix apply_rhs(const Liouvillian& L, const ComplexMatrix& rho) {
    if (rho.rows() != L.dim || rho.cols() != L.dim)
        throw DimensionMismatch("density matrix dimension does not match Liouvillian");
    ComplexMatrix out = -kI * (L.hamiltonian * rho - rho * L.hamiltonian);
    out += dissipator_action(rho, L.jumps);
    const std::complex<double> tr = rho.trace();
    out += L.kappa * (tr / static_cast<double>(L.dim) *
                          ComplexMatrix::Identity(L.dim, L.dim) -
                      rho);
    return out;
}

ComplexMatrix assemble_matrix(const Liouvillian& L, int max_dim) {
    const int d = L.dim;
    const int d2 = d * d;
    if (d2 > max_dim)
        throw CapExceeded("superoperator dimension exceeds the configured cap");

    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const ComplexMatrix& H = L.hamiltonian;

    // vec(A X B) = (B^T kron A) vec(X), column stacking.
    ComplexMatrix sup =
        -kI * (Eigen::kroneckerProduct(id, H) -
               Eigen::kroneckerProduct(H.transpose(), id));

    for (const auto& j : L.jumps) {
        ComplexMatrix o = ComplexMatrix::Zero(d, d);
        o(j.to_index, j.from_index) = 1.0;
        const ComplexMatrix oo = o.adjoint() * o;
        sup += j.rate * Eigen::kroneckerProduct(o.conjugate(), o).eval();
        sup -= 0.5 * j.rate *
               (Eigen::kroneckerProduct(id, oo) +
                Eigen::kroneckerProduct(oo.transpose(), id));
    }

    // kappa [vec(I/d) vec(I)^T - I_{d^2}]: linear form of kappa (I/d - rho)
    // on trace-1 states, trace-annihilating everywhere.
    ComplexMatrix vecid = ComplexMatrix::Zero(d2, 1);
    for (int i = 0; i < d; ++i) vecid(i * d + i, 0) = 1.0;
    sup += L.kappa * ((1.0 / d) * (vecid * vecid.transpose()) -
                      ComplexMatrix::Identity(d2, d2));
    return sup;
}

}  // namespace espsim
