#include "dqpt/spinops.hpp"

#include "dqpt/errors.hpp"

namespace dqpt::spinops {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Operator single_pauli(char axis) {
    Operator m(2, 2);
    switch (axis) {
        case 'x':
            m << 0, 1, 1, 0;
            break;
        case 'y':
            m << 0, -kI, kI, 0;
            break;
        case 'z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw ContractError(std::string("unknown Pauli axis '") + axis + "'");
    }
    return m;
}

int ring_site(int site, int n_sites) {
    int s = (site - 1) % n_sites;
    if (s < 0) s += n_sites;
    return s + 1;
}

void check_site_count(int n_sites) {
    if (n_sites < 1)
        throw DimensionError("site count must be positive, got " + std::to_string(n_sites));
    if (n_sites > kMaxSites)
        throw DimensionError("site count " + std::to_string(n_sites) + " exceeds the cap of " +
                             std::to_string(kMaxSites));
}

Operator pauli(char axis, int site, int n_sites) {
    check_site_count(n_sites);
    if (site < 1 || site > n_sites)
        throw DimensionError("site " + std::to_string(site) + " outside [1, " +
                             std::to_string(n_sites) + "]");
    return pauli_string({{axis, site}}, n_sites);
}

Operator pauli_string(const std::vector<std::pair<char, int>>& factors, int n_sites) {
    check_site_count(n_sites);
    // per-site 2x2 factors, identity where no Pauli sits
    std::vector<Operator> site_ops(static_cast<size_t>(n_sites), Operator::Identity(2, 2));
    for (const auto& [axis, site] : factors) {
        if (site < 1 || site > n_sites)
            throw DimensionError("site " + std::to_string(site) + " outside [1, " +
                                 std::to_string(n_sites) + "]");
        site_ops[static_cast<size_t>(site - 1)] = single_pauli(axis) * site_ops[static_cast<size_t>(site - 1)];
    }
    Operator out = Operator::Identity(1, 1);
    for (const auto& op : site_ops) out = kron(out, op);
    return out;
}

Operator kron(const Operator& a, const Operator& b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Operator commutator(const Operator& a, const Operator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("commutator: dimension mismatch " + std::to_string(a.rows()) + " vs " +
                             std::to_string(b.rows()));
    return a * b - b * a;
}

double frobenius_norm(const Operator& a) { return a.norm(); }

}  // namespace dqpt::spinops
