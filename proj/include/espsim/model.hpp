#pragma once

#include <Eigen/Dense>
#include <utility>

#include "espsim/params.hpp"

namespace espsim {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Three-level interaction-picture Hamiltonian on the full (n+4)-dimensional
// space; rows/columns for e and x_k are zero.
ComplexMatrix build_hamiltonian3(const SystemParams& p, Handedness h);

// build_hamiltonian3 plus the laser terms Delta_e |e><e| and
// Omega_ce (|c><e| + |e><c|)/2.
ComplexMatrix build_hamiltonian_full(const SystemParams& p, Handedness h);

// Dressed basis on the {a,b} manifold:
//   |D> = (Omega_cb |a> - Omega_ca |b>) / Z
//   |B> = (Omega_ca |a> + Omega_cb |b>) / Z,  Z = sqrt(Omega_ca^2 + Omega_cb^2)
// Returned as full-dimension unit vectors (D first).
std::pair<ComplexVector, ComplexVector> dressed_states(const SystemParams& p);

// <B|H3|D> = [delta W_cb W_ca + xi/2 W_ab (W_cb^2 - W_ca^2)] / Z^2  [rad/us].
double dressed_coupling(const SystemParams& p, Handedness h);

// Detuning at which the D<->B coupling cancels for one handedness:
// delta0 = Omega_ab (Omega_ca^2 - Omega_cb^2) / (2 Omega_cb Omega_ca).
double delta0(const SystemParams& p);

// ||H3 D - <D|H3|D> D||_2; zero certifies |D> as an eigenstate of H3.
double dark_state_residual(const SystemParams& p, Handedness h);

}  // namespace espsim
