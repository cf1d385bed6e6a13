#pragma once

#include "dqpt/model.hpp"

namespace dqpt {
namespace prep {

// Product state with every spin in the (+|->) or (-|<-) x-eigenstate.
// Eigenstate of the open xx chain with eigenvalue -(N_A - 1) tau.
StateVector chain_a_ground(int sign, int n_a);

// Unique ground state of the chain-B Hamiltonian on its 2^N_B subspace.
// Throws DegeneracyError when the two lowest levels are closer than
// 1e-10 * ||H_B||_F; global phase fixed by making the largest-magnitude
// amplitude real positive.
StateVector chain_b_ground(const ModelParams& p);

// |psi(0)> = |psi_+> (x) |psi_G> on the full 2^N space.
StateVector initial_state(const ModelParams& p);

// Rank-1 density matrix of the state above.
Operator initial_density_matrix(const ModelParams& p);

// Make the largest-magnitude amplitude real positive (in place).
void fix_phase(StateVector& v);

}  // namespace prep
}  // namespace dqpt
