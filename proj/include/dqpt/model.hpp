#pragma once

#include "dqpt/spinops.hpp"

namespace dqpt {

// Physical parameters of the Ising ring. Energies are in units of the
// fundamental frequency Omega (we work in Omega = 1 units; see bathrates).
struct ModelParams {
    int n_a = 6;           // drain chain length N_A
    int n_b = 2;           // source chain length N_B
    double tau = 0.42;     // interspin coupling
    double h_field = 1.0;  // transverse field H
    double nu = 5.0;       // source-current strength (state preparation only)

    int total_sites() const { return n_a + n_b; }
    void validate() const;  // throws DimensionError / ContractError
};

enum class Segment { A, B };

namespace model {

// H^S = -tau sum_j sx_j sx_{j+1} - H sum_j sz_j on the full ring, periodic
// indices. The ring-closure bond sx_N sx_1 is included; without it the
// current below is not conserved. `closure_bond = false` exists as the
// negative control for exactly that statement.
Operator build_ring_hamiltonian(const ModelParams& p, bool closure_bond = true);

// Conserved energy current J = (H tau / 2) sum_j sy_j (sx_{j-1} - sx_{j+1}),
// periodic indices. Units Omega^2.
Operator build_global_current(const ModelParams& p);

// Open xx-chain on the N_A-spin subspace (no field): the pre-quench chain-A
// Hamiltonian with its two-fold degenerate classical ground manifold.
Operator build_chain_a_hamiltonian(const ModelParams& p);

// Pre-quench chain-B Hamiltonian on the N_B-spin subspace:
// open TFIM minus nu * J_B (J_B with open-boundary truncation).
Operator build_chain_b_hamiltonian(const ModelParams& p);

// Open-boundary segment current embedded in the full 2^N space. Interior
// sites keep both neighbour terms; the first site keeps only -sy sx_{+1},
// the last only +sy sx_{-1}.
Operator build_local_current(const ModelParams& p, Segment segment);

// Same open-boundary current on its own 2^L subspace, sites labelled 1..L
// locally. Used by the chain-B builder.
Operator local_current_on_subspace(int length, double tau, double h_field);

}  // namespace model
}  // namespace dqpt
