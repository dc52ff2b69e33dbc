#pragma once

#include <vector>

#include "espsim/model.hpp"

namespace espsim {

// One spontaneous-decay channel |to><from| with its rate [rad/us].
struct JumpOperator {
    int from_index = 0;
    int to_index = 0;
    double rate = 0.0;
};

// Generator of the master equation
//   drho/dt = -i[H', rho] + sum_k L_k[rho] + kappa (I/d - rho).
// Immutable after construction; apply_rhs is pure.
struct Liouvillian {
    ComplexMatrix hamiltonian;
    std::vector<JumpOperator> jumps;
    double kappa = 0.0;
    int dim = 0;
};

// n+3 equal-branch channels |s><e| for s in {c,a,b,x_1..x_n}, rate gamma/(n+3).
std::vector<JumpOperator> build_jump_set(const SystemParams& p);

// Full generator for one handedness (H', jump set, kappa).
Liouvillian make_liouvillian(const SystemParams& p, Handedness h);

// sum_k rate_k (2 o_k rho o_k^dag - o_k^dag o_k rho - rho o_k^dag o_k) / 2.
ComplexMatrix dissipator_action(const ComplexMatrix& rho,
                                const std::vector<JumpOperator>& jumps);

// kappa (I/dim - rho).
ComplexMatrix collision_action(const ComplexMatrix& rho, double kappa, int dim);

// Right-hand side of the master equation. The collision term is applied as
// kappa (Tr(rho) I/d - rho) so the generator is linear and trace-annihilating
// on all of matrix space; on trace-1 states this is exactly kappa (I/d - rho).
ComplexMatrix apply_rhs(const Liouvillian& L, const ComplexMatrix& rho);

// Column-stacking vectorization of the generator as a d^2 x d^2 matrix.
// max_dim caps the superoperator side length (CapExceeded beyond it).
ComplexMatrix assemble_matrix(const Liouvillian& L, int max_dim = 10000);

}  // namespace espsim
