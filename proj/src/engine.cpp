#include "dqpt/engine.hpp"

#include <cmath>

#include "dqpt/errors.hpp"
#include "dqpt/prep.hpp"

namespace dqpt::engine {

namespace {
constexpr Complex kI{0.0, 1.0};
}

EigenSystem simultaneous_eigensystem(const Operator& h, const Operator& j) {
    if (h.rows() != j.rows() || h.cols() != j.cols())
        throw DimensionError("simultaneous_eigensystem: shape mismatch");
    const double scale = h.norm() * j.norm();
    if (scale > 0.0) {
        const double resid = spinops::commutator(h, j).norm() / scale;
        if (resid > 1e-8)
            throw ContractError("operators do not commute (relative residual " +
                                std::to_string(resid) + ")");
    }

    Eigen::SelfAdjointEigenSolver<Operator> hs(h);
    if (hs.info() != Eigen::Success) throw Error("eigensolver failed on H");
    Eigen::VectorXd energies = hs.eigenvalues();
    Operator basis = hs.eigenvectors();
    const Eigen::Index dim = basis.rows();

    // Diagonalize the projected J inside each degenerate H cluster.
    const double span = energies(dim - 1) - energies(0);
    const double gap_tol = 1e-9 * (span > 0.0 ? span : 1.0);
    Eigen::Index i = 0;
    while (i < dim) {
        Eigen::Index k = i + 1;
        while (k < dim && energies(k) - energies(k - 1) < gap_tol) ++k;
        if (k - i > 1) {
            const Operator blk = basis.middleCols(i, k - i);
            Operator jb = blk.adjoint() * j * blk;
            jb = (jb + Operator(jb.adjoint())) / 2.0;
            Eigen::SelfAdjointEigenSolver<Operator> js(jb);
            if (js.info() != Eigen::Success) throw Error("eigensolver failed on projected J");
            basis.middleCols(i, k - i) = blk * js.eigenvectors();
        }
        i = k;
    }

    for (Eigen::Index c = 0; c < dim; ++c) {
        StateVector col = basis.col(c);
        prep::fix_phase(col);
        basis.col(c) = col;
    }

    Eigen::VectorXd current_values(dim);
    for (Eigen::Index c = 0; c < dim; ++c)
        current_values(c) = std::real(Complex(basis.col(c).adjoint() * j * basis.col(c)));

    return EigenSystem{std::move(energies), std::move(current_values), std::move(basis)};
}

Complex influence_factor(int alpha, int beta, double t, const EigenSystem& eig,
                         const BathParams& b) {
    if (alpha == beta) return Complex{1.0, 0.0};
    const double va = eig.current_values(alpha);
    const double vb = eig.current_values(beta);
    const double dv = va - vb;
    const double damp = -bathrates::big_gamma(t, b) * dv * dv;
    const double phase = bathrates::big_lambda(t, b) * (va * va - vb * vb);
    return std::exp(damp) * std::exp(kI * phase);
}

void evolve_exact(const Operator& rho0, const EigenSystem& eig, const BathParams& b,
                  const std::vector<double>& times, const SampleCallback& on_sample) {
    if (rho0.rows() != eig.dim())
        throw DimensionError("evolve_exact: state dimension does not match eigensystem");
    b.validate();
    const Eigen::Index dim = eig.dim();
    const Operator rho_e0 = eig.basis.adjoint() * rho0 * eig.basis;
    Operator phased(dim, dim);
    for (double t : times) {
        const double gamma_acc = bathrates::big_gamma(t, b);
        const double lambda_acc = bathrates::big_lambda(t, b);
        for (Eigen::Index a = 0; a < dim; ++a) {
            for (Eigen::Index c = 0; c < dim; ++c) {
                if (a == c) {
                    phased(a, c) = rho_e0(a, c);
                    continue;
                }
                const double va = eig.current_values(a);
                const double vc = eig.current_values(c);
                const double dv = va - vc;
                const double arg = -(eig.energies(a) - eig.energies(c)) * t +
                                   lambda_acc * (va * va - vc * vc);
                phased(a, c) = rho_e0(a, c) * std::exp(-gamma_acc * dv * dv) * std::exp(kI * arg);
            }
        }
        const Operator rho_t = eig.basis * phased * eig.basis.adjoint();
        on_sample(t, rho_t);
    }
}

Trajectory evolve_exact(const Operator& rho0, const EigenSystem& eig, const BathParams& b,
                        const std::vector<double>& times) {
    Trajectory traj;
    traj.engine_tag = "exact";
    traj.times = times;
    traj.states.reserve(times.size());
    evolve_exact(rho0, eig, b, times,
                 [&](double, const Operator& rho) { traj.states.push_back(rho); });
    return traj;
}

namespace {

// drho/dt with the Hermitian shortcut: for Hermitian rho the right-hand side
// equals A rho + (A rho)^dag + gamma J rho J with
// A = -i (H - lambda J^2) - (gamma / 2) J^2.
Operator lindblad_rhs(double t, const Operator& rho, const Operator& h, const Operator& j,
                      const Operator& j_sq, const BathParams& b) {
    const double gamma = bathrates::gamma_total(t, b);
    const double lambda = bathrates::lamb_shift(t, b);
    const Operator a = -kI * h + (kI * lambda - gamma / 2.0) * j_sq;
    const Operator ar = a * rho;
    const Operator jr = j * rho;
    return ar + Operator(ar.adjoint()) + gamma * (jr * j);
}

void check_sample_quality(double t, const Operator& rho) {
    const double trace_dev = std::abs(std::real(rho.trace()) - 1.0) + std::abs(std::imag(rho.trace()));
    if (trace_dev > 1e-6)
        throw IntegrationError("trace drift " + std::to_string(trace_dev) + " at t=" +
                               std::to_string(t) + "; reduce the RK4 step size");
    Eigen::SelfAdjointEigenSolver<Operator> s(rho, Eigen::EigenvaluesOnly);
    if (s.eigenvalues()(0) < -1e-6)
        throw IntegrationError("state eigenvalue " + std::to_string(s.eigenvalues()(0)) +
                               " at t=" + std::to_string(t) + "; reduce the RK4 step size");
}

}  // namespace

void evolve_lindblad(const Operator& rho0, const Operator& h, const Operator& j,
                     const BathParams& b, const std::vector<double>& times,
                     int steps_per_sample, const SampleCallback& on_sample) {
    if (rho0.rows() != h.rows() || rho0.rows() != j.rows())
        throw DimensionError("evolve_lindblad: operator shape mismatch");
    if (steps_per_sample < 1) throw ContractError("steps_per_sample must be >= 1");
    b.validate();

    const Operator j_sq = j * j;
    Operator rho = rho0;
    double t_now = 0.0;
    for (double t_target : times) {
        if (t_target < t_now)
            throw ContractError("sample times must be nondecreasing from 0");
        if (t_target > t_now) {
            const double dt = (t_target - t_now) / steps_per_sample;
            for (int s = 0; s < steps_per_sample; ++s) {
                const double t = t_now + s * dt;
                const Operator k1 = lindblad_rhs(t, rho, h, j, j_sq, b);
                const Operator k2 = lindblad_rhs(t + dt / 2, rho + (dt / 2) * k1, h, j, j_sq, b);
                const Operator k3 = lindblad_rhs(t + dt / 2, rho + (dt / 2) * k2, h, j, j_sq, b);
                const Operator k4 = lindblad_rhs(t + dt, rho + dt * k3, h, j, j_sq, b);
                rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            t_now = t_target;
        }
        rho = (rho + Operator(rho.adjoint())) / 2.0;
        check_sample_quality(t_target, rho);
        on_sample(t_target, rho);
    }
}

Trajectory evolve_lindblad(const Operator& rho0, const Operator& h, const Operator& j,
                           const BathParams& b, const std::vector<double>& times,
                           int steps_per_sample) {
    Trajectory traj;
    traj.engine_tag = "lindblad";
    traj.times = times;
    traj.states.reserve(times.size());
    evolve_lindblad(rho0, h, j, b, times, steps_per_sample,
                    [&](double, const Operator& rho) { traj.states.push_back(rho); });
    return traj;
}

}  // namespace dqpt::engine
