#pragma once

#include <utility>
#include <vector>

#include "dqpt/spinops.hpp"

namespace dqpt {

// One row of experiment output; time in units of the rate period T.
struct ObservableRecord {
    double t_over_t = 0.0;
    double gamma_t = 0.0;
    double lambda_t = 0.0;
    double rate_function = 0.0;
    int rate_branch = +1;       // minimizing d in {+1, -1}
    bool rate_diverged = false; // both fidelities vanished
    double g_f_plus = 0.0;
    double g_f_minus = 0.0;
    double p_plus = 0.0;
    double p_minus = 0.0;
    double m_x = 0.0;
    double j_expect = 0.0;
    double trace_dev = 0.0;
    double purity = 0.0;
};

struct RateResult {
    double value = 0.0;
    int branch = +1;
    bool diverged = false;
    double g_f_plus = 0.0;
    double g_f_minus = 0.0;
};

namespace observables {

// rho_A = Tr_B rho for the site-1-most-significant layout (A occupies the
// leading Kronecker factors).
Operator partial_trace_b(const Operator& rho, int n_a, int n_b);

// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), via Hermitian
// eigendecomposition with negative eigenvalues clamped at 0.
double fidelity(const Operator& rho, const Operator& sigma);

// Shortcut for a pure reference: sqrt(<psi|sigma|psi>).
double fidelity_with_pure(const StateVector& psi, const Operator& sigma);

// varpi = min_d -log(G_{F,d}) / n_denom against the chain-A product
// references psi_+/psi_-; ties resolve to the + branch.
RateResult rate_function(const Operator& rho_a, int n_denom);

// Normalized return probabilities (P_+, P_-); throws when both raw overlaps
// vanish.
std::pair<double, double> return_probabilities(const Operator& rho_a);

// (1/N_A) sum_i <sigma^x_i>.
double magnetization_x(const Operator& rho_a, int n_a);

// Half trace norm of the difference.
double trace_distance(const Operator& a, const Operator& b);

// Closed-system Loschmidt amplitude G(t) = <psi0| e^{-i H_f t} |psi0>.
Eigen::VectorXcd closed_loschmidt(const StateVector& psi0, const Operator& h_f,
                                  const std::vector<double>& times);

struct ClosedRates {
    Eigen::VectorXcd zeta;   // -log G / N
    Eigen::VectorXd l_sym;   // probability to stay in the ground manifold
    Eigen::VectorXcd g_i;    // interferometric amplitude (= G for pure states)
};

// Symmetry-resolved closed-system diagnostics for an orthonormal ground
// manifold.
ClosedRates closed_rate_and_symmetric(const StateVector& psi0,
                                      const std::vector<StateVector>& ground_manifold,
                                      const Operator& h_f, const std::vector<double>& times);

}  // namespace observables
}  // namespace dqpt
