#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dqpt/bathrates.hpp"
#include "dqpt/spinops.hpp"

namespace dqpt {

// Simultaneous eigendecomposition of (H^S, J). Columns of `basis` are the
// shared eigenvectors; `energies` and `current_values` are the corresponding
// E_alpha and V^(alpha).
struct EigenSystem {
    Eigen::VectorXd energies;
    Eigen::VectorXd current_values;
    Operator basis;

    Eigen::Index dim() const { return basis.rows(); }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Operator> states;
    std::string engine_tag;
};

using SampleCallback = std::function<void(double t, const Operator& rho)>;

namespace engine {

// Diagonalize H and the commuting J in one shared basis. H-eigenvalues
// closer than 1e-9 * spectral range are clustered and the projected J is
// diagonalized inside each cluster. Throws ContractError when
// ||[H, J]|| / (||H|| ||J||) > 1e-8.
EigenSystem simultaneous_eigensystem(const Operator& h, const Operator& j);

// F_ab(t) = exp[-Gamma(t) (V_a - V_b)^2 + i Lambda(t) (V_a^2 - V_b^2)].
// |F| <= 1 always, F_aa = 1 exactly.
Complex influence_factor(int alpha, int beta, double t, const EigenSystem& eig,
                         const BathParams& b);

// Exact propagation: rho(t) = sum_ab rho_ab(0) e^{-i(E_a - E_b)t} F_ab(t)
// |E_a><E_b|, returned in the computational basis.
void evolve_exact(const Operator& rho0, const EigenSystem& eig, const BathParams& b,
                  const std::vector<double>& times, const SampleCallback& on_sample);
Trajectory evolve_exact(const Operator& rho0, const EigenSystem& eig, const BathParams& b,
                        const std::vector<double>& times);

// Fixed-step RK4 integration of
//   drho/dt = -i [H - lambda(t) J^2, rho] + gamma(t) (J rho J - {J^2, rho}/2)
// with the scalar rates evaluated at the RK substage times. The state is
// re-symmetrized at each sample; trace drift beyond 1e-6 or negativity
// below -1e-6 raises IntegrationError.
void evolve_lindblad(const Operator& rho0, const Operator& h, const Operator& j,
                     const BathParams& b, const std::vector<double>& times,
                     int steps_per_sample, const SampleCallback& on_sample);
Trajectory evolve_lindblad(const Operator& rho0, const Operator& h, const Operator& j,
                           const BathParams& b, const std::vector<double>& times,
                           int steps_per_sample);

}  // namespace engine
}  // namespace dqpt
