#include "dqpt/model.hpp"

#include <cmath>

#include "dqpt/errors.hpp"

namespace dqpt {

void ModelParams::validate() const {
    if (n_a < 2 || n_b < 2)
        throw DimensionError("chain lengths must be >= 2 (got N_A=" + std::to_string(n_a) +
                             ", N_B=" + std::to_string(n_b) + ")");
    spinops::check_site_count(total_sites());
    if (!std::isfinite(tau) || !std::isfinite(h_field) || !std::isfinite(nu))
        throw ContractError("model parameters must be finite");
}

namespace model {

using spinops::pauli_string;
using spinops::ring_site;

Operator build_ring_hamiltonian(const ModelParams& p, bool closure_bond) {
    p.validate();
    const int n = p.total_sites();
    const Eigen::Index dim = Eigen::Index{1} << n;
    Operator h = Operator::Zero(dim, dim);
    const int last_bond = closure_bond ? n : n - 1;
    for (int j = 1; j <= last_bond; ++j)
        h -= p.tau * pauli_string({{'x', j}, {'x', ring_site(j + 1, n)}}, n);
    for (int j = 1; j <= n; ++j) h -= p.h_field * pauli_string({{'z', j}}, n);
    return h;
}

Operator build_global_current(const ModelParams& p) {
    p.validate();
    const int n = p.total_sites();
    const Eigen::Index dim = Eigen::Index{1} << n;
    Operator j_op = Operator::Zero(dim, dim);
    const double pref = p.h_field * p.tau / 2.0;
    for (int j = 1; j <= n; ++j) {
        j_op += pref * pauli_string({{'y', j}, {'x', ring_site(j - 1, n)}}, n);
        j_op -= pref * pauli_string({{'y', j}, {'x', ring_site(j + 1, n)}}, n);
    }
    return j_op;
}

Operator build_chain_a_hamiltonian(const ModelParams& p) {
    p.validate();
    const Eigen::Index dim = Eigen::Index{1} << p.n_a;
    Operator h = Operator::Zero(dim, dim);
    for (int j = 1; j < p.n_a; ++j)
        h -= p.tau * pauli_string({{'x', j}, {'x', j + 1}}, p.n_a);
    return h;
}

Operator local_current_on_subspace(int length, double tau, double h_field) {
    if (length < 2) throw DimensionError("segment current needs at least 2 sites");
    const Eigen::Index dim = Eigen::Index{1} << length;
    Operator j_op = Operator::Zero(dim, dim);
    const double pref = h_field * tau / 2.0;
    for (int j = 2; j < length; ++j) {
        j_op += pref * pauli_string({{'y', j}, {'x', j - 1}}, length);
        j_op -= pref * pauli_string({{'y', j}, {'x', j + 1}}, length);
    }
    j_op -= pref * pauli_string({{'y', 1}, {'x', 2}}, length);
    j_op += pref * pauli_string({{'y', length}, {'x', length - 1}}, length);
    return j_op;
}

Operator build_chain_b_hamiltonian(const ModelParams& p) {
    p.validate();
    const Eigen::Index dim = Eigen::Index{1} << p.n_b;
    Operator h = Operator::Zero(dim, dim);
    for (int j = 1; j < p.n_b; ++j)
        h -= p.tau * pauli_string({{'x', j}, {'x', j + 1}}, p.n_b);
    for (int j = 1; j <= p.n_b; ++j) h -= p.h_field * pauli_string({{'z', j}}, p.n_b);
    h -= p.nu * local_current_on_subspace(p.n_b, p.tau, p.h_field);
    return h;
}

Operator build_local_current(const ModelParams& p, Segment segment) {
    p.validate();
    const int n = p.total_sites();
    const int first = segment == Segment::A ? 1 : p.n_a + 1;
    const int last = segment == Segment::A ? p.n_a : n;
    const Eigen::Index dim = Eigen::Index{1} << n;
    Operator j_op = Operator::Zero(dim, dim);
    const double pref = p.h_field * p.tau / 2.0;
    for (int j = first + 1; j < last; ++j) {
        j_op += pref * pauli_string({{'y', j}, {'x', j - 1}}, n);
        j_op -= pref * pauli_string({{'y', j}, {'x', j + 1}}, n);
    }
    j_op -= pref * pauli_string({{'y', first}, {'x', first + 1}}, n);
    j_op += pref * pauli_string({{'y', last}, {'x', last - 1}}, n);
    return j_op;
}

}  // namespace model
}  // namespace dqpt
