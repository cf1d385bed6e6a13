#pragma once

#include <limits>

namespace dqpt {

// Parameters of the two dephasing baths. The non-Markovian bath has modes
// omega_l = l * Omega with couplings g_l = (h / Omega^2) exp(-z l / 2);
// the Markovian one enters only through the single rate gamma0.
struct BathParams {
    double gamma0 = 0.0;  // Markovian dephasing rate, units Omega
    double h = 0.0;       // non-Markovian coupling amplitude, units Omega
    double z = 0.1;       // spectral decay exponent, dimensionless
    int modes = 60;       // number of non-Markovian modes M
    double beta = std::numeric_limits<double>::infinity();  // inverse bath temperature
    double omega = 1.0;   // fundamental frequency Omega

    double period() const;  // T = 2 pi / Omega
    void validate() const;
};

namespace bathrates {

// Numerically stable coth(beta * w / 2); exactly 1 beyond argument 40 and at
// beta = infinity.
double coth_half(double beta, double w);

// gamma_1(t) = sum_l (g_l^2 / w_l) sin(w_l t) coth(beta w_l / 2).
// Periodic with period T, zero average over one period.
double gamma1(double t, const BathParams& b);

// Total dephasing rate gamma(t) = 2 gamma0 + 2 gamma1(t).
double gamma_total(double t, const BathParams& b);

// Lamb-shift coefficient lambda(t) = sum_l (g_l^2 / w_l) [1 - cos(w_l t)] >= 0.
double lamb_shift(double t, const BathParams& b);

// Decoherence exponent Gamma(t) = gamma0 t
//   + sum_l (g_l / w_l)^2 [1 - cos(w_l t)] coth(beta w_l / 2).
// Nonnegative for t >= 0 and dGamma/dt = gamma(t) / 2.
double big_gamma(double t, const BathParams& b);

// Phase accumulator Lambda(t) = sum_l (g_l / w_l)^2 [w_l t - sin(w_l t)],
// monotone nondecreasing with dLambda/dt = lambda(t).
double big_lambda(double t, const BathParams& b);

}  // namespace bathrates
}  // namespace dqpt
