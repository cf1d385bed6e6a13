#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

namespace dqpt {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Hard cap on the number of spins; dim = 2^14 dense complex is already ~4 GiB.
inline constexpr int kMaxSites = 14;

namespace spinops {

// 2x2 Pauli matrix for axis 'x', 'y' or 'z'.
Operator single_pauli(char axis);

// Wrap a 1-based ring index into [1, n]: n+1 -> 1 and 0 -> n.
int ring_site(int site, int n_sites);

// I (x) ... (x) sigma^axis (x) ... (x) I with the Pauli at `site` (1-based).
// Site 1 is the most significant Kronecker factor, so the basis state
// |s_1 s_2 ... s_N> has index  sum_j s_j 2^(N-j)  with s=0 for spin-up.
Operator pauli(char axis, int site, int n_sites);

// Product of single-site Paulis on distinct sites, assembled in one pass
// (no dense matrix products). Factors are (axis, site) pairs.
Operator pauli_string(const std::vector<std::pair<char, int>>& factors, int n_sites);

Operator kron(const Operator& a, const Operator& b);

// AB - BA.
Operator commutator(const Operator& a, const Operator& b);

double frobenius_norm(const Operator& a);

// Throws DimensionError unless n_sites is in [1, kMaxSites].
void check_site_count(int n_sites);

}  // namespace spinops
}  // namespace dqpt
