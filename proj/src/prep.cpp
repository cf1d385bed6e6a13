#include "dqpt/prep.hpp"

#include <cmath>

#include "dqpt/errors.hpp"

namespace dqpt::prep {

void fix_phase(StateVector& v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const Complex a = v(imax);
    if (std::abs(a) > 0.0) v *= std::conj(a) / std::abs(a);
}

StateVector chain_a_ground(int sign, int n_a) {
    spinops::check_site_count(n_a);
    if (sign != +1 && sign != -1) throw ContractError("sign must be +1 or -1");
    StateVector site(2);
    const double r = 1.0 / std::sqrt(2.0);
    site << r, sign * r;
    StateVector out = StateVector::Ones(1);
    for (int j = 0; j < n_a; ++j) {
        StateVector next(out.size() * 2);
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            next(2 * i) = out(i) * site(0);
            next(2 * i + 1) = out(i) * site(1);
        }
        out = std::move(next);
    }
    return out;
}

StateVector chain_b_ground(const ModelParams& p) {
    const Operator hb = model::build_chain_b_hamiltonian(p);
    Eigen::SelfAdjointEigenSolver<Operator> solver(hb);
    if (solver.info() != Eigen::Success) throw Error("chain-B eigensolver failed");
    const auto& ev = solver.eigenvalues();
    const double gap = ev(1) - ev(0);
    if (gap <= 1e-10 * hb.norm())
        throw DegeneracyError("chain-B ground state is degenerate (gap " + std::to_string(gap) +
                              "); the protocol requires a unique |psi_G>");
    StateVector g = solver.eigenvectors().col(0);
    fix_phase(g);
    return g;
}

StateVector initial_state(const ModelParams& p) {
    p.validate();
    const StateVector a = chain_a_ground(+1, p.n_a);
    const StateVector b = chain_b_ground(p);
    StateVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

Operator initial_density_matrix(const ModelParams& p) {
    const StateVector psi = initial_state(p);
    return psi * psi.adjoint();
}

}  // namespace dqpt::prep
