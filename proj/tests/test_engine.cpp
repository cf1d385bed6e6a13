#include <doctest.h>

#include <random>

#include "dqpt/engine.hpp"
#include "dqpt/errors.hpp"
#include "dqpt/model.hpp"
#include "dqpt/observables.hpp"
#include "dqpt/prep.hpp"

using namespace dqpt;

namespace {

ModelParams standard_params() { return ModelParams{6, 2, 0.42, 1.0, 5.0}; }

BathParams open_bath() {
    BathParams b;
    b.gamma0 = 0.2827;
    b.h = 0.5;
    return b;
}

Operator random_hermitian(int dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    Operator m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(nd(rng), nd(rng));
    return (m + Operator(m.adjoint())) / 2.0;
}

double offdiag_rel(const Operator& d) {
    Operator off = d;
    off.diagonal().setZero();
    return off.norm() / d.norm();
}

}  // namespace

TEST_CASE("simultaneous eigensystem of H = J = sigma_z") {
    const Operator z = spinops::pauli('z', 1, 1);
    const auto eig = engine::simultaneous_eigensystem(z, z);
    CHECK(eig.energies(0) == doctest::Approx(-1.0));
    CHECK(eig.energies(1) == doctest::Approx(1.0));
    for (int i = 0; i < 2; ++i)
        CHECK(eig.current_values(i) == doctest::Approx(eig.energies(i)));
}

TEST_CASE("shared basis diagonalizes both operators at the standard parameters") {
    const auto p = standard_params();
    const Operator h = model::build_ring_hamiltonian(p);
    const Operator j = model::build_global_current(p);
    const auto eig = engine::simultaneous_eigensystem(h, j);
    CHECK((eig.basis.adjoint() * eig.basis - Operator::Identity(256, 256)).norm() < 1e-10);
    CHECK(offdiag_rel(eig.basis.adjoint() * h * eig.basis) < 1e-10);
    CHECK(offdiag_rel(eig.basis.adjoint() * j * eig.basis) < 1e-10);
}

TEST_CASE("degenerate H forces the clustered path: H = I, J generic") {
    const Operator j = random_hermitian(16, 3);
    const auto eig = engine::simultaneous_eigensystem(Operator::Identity(16, 16), j);
    CHECK(offdiag_rel(eig.basis.adjoint() * j * eig.basis) < 1e-10);
}

TEST_CASE("non-commuting inputs are rejected") {
    CHECK_THROWS_AS(
        (void)engine::simultaneous_eigensystem(spinops::pauli('x', 1, 1), spinops::pauli('z', 1, 1)),
        ContractError);
}

TEST_CASE("influence factor: unity on the diagonal, at t = 0, and bounded") {
    const auto p = standard_params();
    const auto eig = engine::simultaneous_eigensystem(model::build_ring_hamiltonian(p),
                                                      model::build_global_current(p));
    const auto b = open_bath();
    CHECK(engine::influence_factor(5, 5, 2.7, eig, b) == Complex(1, 0));
    CHECK(engine::influence_factor(3, 9, 0.0, eig, b) == Complex(1, 0));
    for (int a : {0, 17, 100})
        for (int c : {3, 64, 255})
            CHECK(std::abs(engine::influence_factor(a, c, 1.3, eig, b)) <= 1.0 + 1e-15);
}

TEST_CASE("influence factor is stroboscopically divisible") {
    const auto p = standard_params();
    const auto eig = engine::simultaneous_eigensystem(model::build_ring_hamiltonian(p),
                                                      model::build_global_current(p));
    auto b = open_bath();
    const double t_p = b.period();
    for (int m : {2, 3}) {
        const Complex f1 = engine::influence_factor(3, 200, t_p, eig, b);
        const Complex fm = engine::influence_factor(3, 200, m * t_p, eig, b);
        CHECK(std::abs(fm - std::pow(f1, m)) < 1e-10);
    }
}

TEST_CASE("exact evolution returns rho0 at t = 0 and keeps populations fixed") {
    const auto p = standard_params();
    const Operator rho0 = prep::initial_density_matrix(p);
    const auto eig = engine::simultaneous_eigensystem(model::build_ring_hamiltonian(p),
                                                      model::build_global_current(p));
    const auto b = open_bath();
    const auto traj = engine::evolve_exact(rho0, eig, b, {0.0, 1.0, 3.0});
    CHECK((traj.states[0] - rho0).norm() < 1e-12);
    const Eigen::VectorXd pop0 =
        Operator(eig.basis.adjoint() * rho0 * eig.basis).diagonal().real();
    for (const auto& rho : traj.states) {
        const Eigen::VectorXd pop =
            Operator(eig.basis.adjoint() * rho * eig.basis).diagonal().real();
        CHECK((pop - pop0).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("closed limit: exact evolution is unitary (purity 1)") {
    const auto p = standard_params();
    const Operator rho0 = prep::initial_density_matrix(p);
    const auto eig = engine::simultaneous_eigensystem(model::build_ring_hamiltonian(p),
                                                      model::build_global_current(p));
    BathParams closed;  // gamma0 = h = 0
    const auto traj = engine::evolve_exact(rho0, eig, closed, {0.7, 2.9, 5.3});
    for (const auto& rho : traj.states)
        CHECK(std::real((rho * rho).trace()) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("single-qubit pure dephasing matches the analytic decay") {
    // H = J = sigma_z, gamma0 only: coherence decays as exp(-gamma0 t (dV)^2)
    const Operator z = spinops::pauli('z', 1, 1);
    const auto eig = engine::simultaneous_eigensystem(z, z);
    BathParams b;
    b.gamma0 = 0.3;
    Operator rho0(2, 2);
    rho0 << 0.5, 0.5, 0.5, 0.5;  // |+><+|
    const double t = 1.7;
    const auto traj = engine::evolve_exact(rho0, eig, b, {t});
    const double expected = 0.5 * std::exp(-b.gamma0 * t * 4.0);
    CHECK(std::abs(traj.states[0](0, 1)) == doctest::Approx(expected).epsilon(1e-10));

    const auto rk = engine::evolve_lindblad(rho0, z, z, b, {t}, 2000);
    CHECK(std::abs(rk.states[0](0, 1)) == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("closed-system RK4 on a diagonal Hamiltonian rotates coherences") {
    Operator h(2, 2);
    h << 1.3, 0, 0, -0.2;
    Operator rho0(2, 2);
    rho0 << 0.6, 0.3, 0.3, 0.4;
    BathParams none;
    const double t = 2.1;
    const auto traj = engine::evolve_lindblad(rho0, h, Operator::Zero(2, 2), none, {t}, 4000);
    CHECK(std::abs(traj.states[0](0, 0) - Complex(0.6, 0)) < 1e-9);
    const Complex expected = 0.3 * std::exp(Complex(0, -1.5 * t));
    CHECK(std::abs(traj.states[0](0, 1) - expected) < 1e-8);
}

TEST_CASE("engines agree to 1e-6 over one period at the full open parameters") {
    const auto p = standard_params();
    const Operator h = model::build_ring_hamiltonian(p);
    const Operator j = model::build_global_current(p);
    const Operator rho0 = prep::initial_density_matrix(p);
    const auto eig = engine::simultaneous_eigensystem(h, j);
    const auto b = open_bath();

    std::vector<double> times;
    for (int k = 1; k <= 20; ++k) times.push_back(b.period() * k / 20.0);
    const auto exact = engine::evolve_exact(rho0, eig, b, times);
    // 4e3 steps/period keeps this test affordable; the acceptance suite runs 2e4
    const auto rk = engine::evolve_lindblad(rho0, h, j, b, times, 200);
    double worst = 0.0;
    for (size_t k = 0; k < times.size(); ++k)
        worst = std::max(worst, observables::trace_distance(exact.states[k], rk.states[k]));
    CHECK(worst <= 1e-6);
}

TEST_CASE("RK4 error falls ~16x when the step is halved") {
    const auto p = standard_params();
    const Operator h = model::build_ring_hamiltonian(p);
    const Operator j = model::build_global_current(p);
    const Operator rho0 = prep::initial_density_matrix(p);
    const auto eig = engine::simultaneous_eigensystem(h, j);
    const auto b = open_bath();
    const std::vector<double> times{b.period() / 8.0};
    const Operator ref = engine::evolve_exact(rho0, eig, b, times).states[0];
    const Operator coarse = engine::evolve_lindblad(rho0, h, j, b, times, 150).states[0];
    const Operator fine = engine::evolve_lindblad(rho0, h, j, b, times, 300).states[0];
    const double ratio = (coarse - ref).norm() / (fine - ref).norm();
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.20));
}

TEST_CASE("exact state at 2T and 3T equals powers of the one-period map") {
    const auto p = standard_params();
    const Operator rho0 = prep::initial_density_matrix(p);
    const auto eig = engine::simultaneous_eigensystem(model::build_ring_hamiltonian(p),
                                                      model::build_global_current(p));
    const auto b = open_bath();
    const double t_p = b.period();
    Operator stepped = rho0;
    for (int m = 1; m <= 3; ++m) {
        stepped = engine::evolve_exact(stepped, eig, b, {t_p}).states[0];
        if (m == 1) continue;
        const Operator direct = engine::evolve_exact(rho0, eig, b, {m * t_p}).states[0];
        CHECK((direct - stepped).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("positivity holds on the exact path even where gamma(t) < 0") {
    const auto p = standard_params();
    const Operator rho0 = prep::initial_density_matrix(p);
    const auto eig = engine::simultaneous_eigensystem(model::build_ring_hamiltonian(p),
                                                      model::build_global_current(p));
    BathParams b;
    b.h = 0.5;  // gamma0 = 0: gamma dips negative in (T/2, T)
    std::vector<double> times;
    for (int k = 1; k <= 16; ++k) times.push_back(b.period() * k / 16.0);
    const auto traj = engine::evolve_exact(rho0, eig, b, times);
    for (const auto& rho : traj.states) {
        Eigen::SelfAdjointEigenSolver<Operator> s(rho, Eigen::EigenvaluesOnly);
        CHECK(s.eigenvalues()(0) >= -1e-8);
        CHECK(std::abs(rho.trace() - Complex(1, 0)) < 1e-9);
    }
}

TEST_CASE("a hopeless step count raises an integration-quality error") {
    const auto p = standard_params();
    const Operator h = model::build_ring_hamiltonian(p);
    const Operator j = model::build_global_current(p);
    const Operator rho0 = prep::initial_density_matrix(p);
    const auto b = open_bath();
    CHECK_THROWS_AS(
        (void)engine::evolve_lindblad(rho0, h, j, b, {b.period()}, 1),
        IntegrationError);
}
