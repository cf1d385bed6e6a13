#include "dqpt/bathrates.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dqpt/errors.hpp"

namespace dqpt {

double BathParams::period() const { return 2.0 * std::numbers::pi / omega; }

void BathParams::validate() const {
    if (gamma0 < 0.0 || !std::isfinite(gamma0)) throw ContractError("gamma0 must be >= 0 and finite");
    if (h < 0.0 || !std::isfinite(h)) throw ContractError("h must be >= 0 and finite");
    if (z <= 0.0) throw ContractError("z must be > 0");
    if (modes < 1) throw ContractError("mode count M must be >= 1");
    if (!(beta > 0.0)) throw ContractError("beta_NMB must be positive (or infinity)");
    if (omega <= 0.0 || !std::isfinite(omega)) throw ContractError("Omega must be positive");
}

namespace bathrates {

double coth_half(double beta, double w) {
    if (std::isinf(beta)) return 1.0;
    const double x = beta * w / 2.0;
    if (x > 40.0) return 1.0;
    return 1.0 / std::tanh(x);
}

namespace {

// Sum f(g_l, w_l) over the bath modes.
template <typename F>
double mode_sum(const BathParams& b, F&& f) {
    double acc = 0.0;
    for (int l = 1; l <= b.modes; ++l) {
        const double g = (b.h / (b.omega * b.omega)) * std::exp(-b.z * l / 2.0);
        const double w = l * b.omega;
        acc += f(g, w);
    }
    return acc;
}

}  // namespace

double gamma1(double t, const BathParams& b) {
    return mode_sum(b, [&](double g, double w) {
        return g * g / w * std::sin(w * t) * coth_half(b.beta, w);
    });
}

double gamma_total(double t, const BathParams& b) { return 2.0 * b.gamma0 + 2.0 * gamma1(t, b); }

double lamb_shift(double t, const BathParams& b) {
    return mode_sum(b, [&](double g, double w) { return g * g / w * (1.0 - std::cos(w * t)); });
}

double big_gamma(double t, const BathParams& b) {
    return b.gamma0 * t + mode_sum(b, [&](double g, double w) {
               const double r = g / w;
               return r * r * (1.0 - std::cos(w * t)) * coth_half(b.beta, w);
           });
}

double big_lambda(double t, const BathParams& b) {
    return mode_sum(b, [&](double g, double w) {
        const double r = g / w;
        return r * r * (w * t - std::sin(w * t));
    });
}

}  // namespace bathrates
}  // namespace dqpt
