#include "dqpt/observables.hpp"

#include <cmath>
#include <limits>

#include "dqpt/errors.hpp"
#include "dqpt/prep.hpp"

namespace dqpt::observables {

namespace {
constexpr Complex kI{0.0, 1.0};

int log2_dim(Eigen::Index dim, const char* what) {
    int n = 0;
    Eigen::Index d = dim;
    while (d > 1) {
        if (d % 2 != 0) throw DimensionError(std::string(what) + ": dimension is not a power of two");
        d /= 2;
        ++n;
    }
    return n;
}

// Hermitian square root with eigenvalues clamped at 0 below 1e-10.
Operator psd_sqrt(const Operator& a) {
    Eigen::SelfAdjointEigenSolver<Operator> s((a + Operator(a.adjoint())) / 2.0);
    if (s.info() != Eigen::Success) throw Error("eigensolver failed in matrix square root");
    Eigen::VectorXd ev = s.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) > 1e-10 ? std::sqrt(ev(i)) : 0.0;
    return s.eigenvectors() * ev.asDiagonal() * s.eigenvectors().adjoint();
}

}  // namespace

Operator partial_trace_b(const Operator& rho, int n_a, int n_b) {
    const Eigen::Index dim_a = Eigen::Index{1} << n_a;
    const Eigen::Index dim_b = Eigen::Index{1} << n_b;
    if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
        throw DimensionError("partial_trace_b: state dimension does not match N_A + N_B");
    Operator out = Operator::Zero(dim_a, dim_a);
    for (Eigen::Index a = 0; a < dim_a; ++a)
        for (Eigen::Index c = 0; c < dim_a; ++c)
            for (Eigen::Index b = 0; b < dim_b; ++b)
                out(a, c) += rho(a * dim_b + b, c * dim_b + b);
    return out;
}

double fidelity(const Operator& rho, const Operator& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw DimensionError("fidelity: dimension mismatch");
    const Operator root = psd_sqrt(rho);
    return std::real(psd_sqrt(root * sigma * root).trace());
}

double fidelity_with_pure(const StateVector& psi, const Operator& sigma) {
    if (psi.size() != sigma.rows()) throw DimensionError("fidelity_with_pure: dimension mismatch");
    const double overlap = std::real(Complex(psi.adjoint() * sigma * psi));
    return std::sqrt(overlap > 0.0 ? overlap : 0.0);
}

RateResult rate_function(const Operator& rho_a, int n_denom) {
    const int n_a = log2_dim(rho_a.rows(), "rate_function");
    if (n_denom < 1) throw ContractError("rate-function denominator must be positive");
    RateResult r;
    r.g_f_plus = fidelity_with_pure(prep::chain_a_ground(+1, n_a), rho_a);
    r.g_f_minus = fidelity_with_pure(prep::chain_a_ground(-1, n_a), rho_a);
    const double best = std::max(r.g_f_plus, r.g_f_minus);
    r.branch = r.g_f_plus >= r.g_f_minus ? +1 : -1;
    if (best <= 0.0) {
        r.diverged = true;
        r.value = std::numeric_limits<double>::infinity();
    } else {
        r.value = -std::log(best) / n_denom;
        if (r.value < 0.0) r.value = 0.0;  // clip fp noise at G = 1
    }
    return r;
}

std::pair<double, double> return_probabilities(const Operator& rho_a) {
    const int n_a = log2_dim(rho_a.rows(), "return_probabilities");
    const StateVector plus = prep::chain_a_ground(+1, n_a);
    const StateVector minus = prep::chain_a_ground(-1, n_a);
    const double wp = std::real(Complex(plus.adjoint() * rho_a * plus));
    const double wm = std::real(Complex(minus.adjoint() * rho_a * minus));
    const double total = wp + wm;
    if (total <= 1e-300)
        throw ContractError("return_probabilities: both overlaps vanish, normalization degenerate");
    return {wp / total, wm / total};
}

double magnetization_x(const Operator& rho_a, int n_a) {
    const int inferred = log2_dim(rho_a.rows(), "magnetization_x");
    if (inferred != n_a) throw DimensionError("magnetization_x: N_A does not match state dimension");
    double acc = 0.0;
    for (int j = 1; j <= n_a; ++j)
        acc += std::real((spinops::pauli_string({{'x', j}}, n_a) * rho_a).trace());
    return acc / n_a;
}

double trace_distance(const Operator& a, const Operator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("trace_distance: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Operator> s((a - b + Operator((a - b).adjoint())) / 2.0,
                                              Eigen::EigenvaluesOnly);
    return 0.5 * s.eigenvalues().cwiseAbs().sum();
}

Eigen::VectorXcd closed_loschmidt(const StateVector& psi0, const Operator& h_f,
                                  const std::vector<double>& times) {
    if (psi0.size() != h_f.rows()) throw DimensionError("closed_loschmidt: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Operator> s(h_f);
    if (s.info() != Eigen::Success) throw Error("eigensolver failed on H_f");
    const StateVector c = s.eigenvectors().adjoint() * psi0;
    const Eigen::VectorXd weights = c.cwiseAbs2();
    Eigen::VectorXcd out(static_cast<Eigen::Index>(times.size()));
    for (size_t k = 0; k < times.size(); ++k) {
        Complex g{0.0, 0.0};
        for (Eigen::Index a = 0; a < c.size(); ++a)
            g += weights(a) * std::exp(-kI * s.eigenvalues()(a) * times[k]);
        out(static_cast<Eigen::Index>(k)) = g;
    }
    return out;
}

ClosedRates closed_rate_and_symmetric(const StateVector& psi0,
                                      const std::vector<StateVector>& ground_manifold,
                                      const Operator& h_f, const std::vector<double>& times) {
    if (psi0.size() != h_f.rows())
        throw DimensionError("closed_rate_and_symmetric: dimension mismatch");
    for (size_t i = 0; i < ground_manifold.size(); ++i) {
        for (size_t j = 0; j <= i; ++j) {
            const Complex ov = ground_manifold[j].adjoint() * ground_manifold[i];
            const double target = i == j ? 1.0 : 0.0;
            if (std::abs(ov - target) > 1e-10)
                throw ContractError("ground manifold is not orthonormal");
        }
    }
    const int n = log2_dim(psi0.size(), "closed_rate_and_symmetric");

    Eigen::SelfAdjointEigenSolver<Operator> s(h_f);
    if (s.info() != Eigen::Success) throw Error("eigensolver failed on H_f");
    const StateVector c0 = s.eigenvectors().adjoint() * psi0;

    ClosedRates out;
    const auto nt = static_cast<Eigen::Index>(times.size());
    out.zeta.resize(nt);
    out.l_sym.resize(nt);
    out.g_i.resize(nt);
    for (Eigen::Index k = 0; k < nt; ++k) {
        StateVector ct(c0.size());
        for (Eigen::Index a = 0; a < c0.size(); ++a)
            ct(a) = c0(a) * std::exp(-kI * s.eigenvalues()(a) * times[static_cast<size_t>(k)]);
        const StateVector psi_t = s.eigenvectors() * ct;
        const Complex g = psi0.adjoint() * psi_t;
        out.g_i(k) = g;
        out.zeta(k) = -std::log(g) / static_cast<double>(n);
        double l = 0.0;
        for (const auto& gj : ground_manifold) l += std::norm(Complex(gj.adjoint() * psi_t));
        out.l_sym(k) = l;
    }
    return out;
}

}  // namespace dqpt::observables
