#include "aqc/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "aqc/errors.hpp"
#include "aqc/quadrature.hpp"

namespace aqc {

ApproxParams ApproxParams::from_landau_zener(double delta_max, double delta_min,
                                             double tau_star, double gamma,
                                             double temperature) {
    ApproxParams p{gamma * temperature * tau_star / delta_max, gamma, tau_star,
                   delta_min / delta_max, temperature / delta_min};
    p.validate();
    return p;
}

void ApproxParams::validate() const {
    if (!(R > 0.0)) throw DomainError("R must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
    if (!(gamma * tau_star > 0.0)) throw DomainError("gamma * tau_star must be positive");
    if (!(tau_star > 0.0)) throw DomainError("tau_star must be positive");
}

Example1Regime example1_regime(const ApproxParams& p) {
    return {p.temperature_over_delta_max() >= 1.0, p.epsilon <= 0.1, p.gamma_tau() < 1.0};
}

double lambda_factor(double epsilon, double u) {
    if (!(epsilon > 0.0)) throw DomainError("lambda_factor requires epsilon > 0");
    const double root = std::hypot(epsilon, u);
    if (u >= 0.0) return std::numbers::ln2 - std::log(root + u);
    return std::numbers::ln2 - std::log(epsilon * epsilon / (root - u));
}

double example1_n(const ApproxParams& p, double t) {
    const double u = (p.tau_star - t) / p.tau_star;
    return lambda_factor(p.epsilon, u) * p.R * std::exp(-p.gamma * (t - p.tau_star));
}

double example1_integral(const ApproxParams& p, double t) {
    if (!(t >= 0.0)) throw DomainError("example1_integral requires t >= 0");
    if (t == 0.0) return 0.0;
    auto integrand = [&](double s) {
        const double u = (p.tau_star - s) / p.tau_star;
        return std::exp(-p.gamma * (t - s)) / std::hypot(u, p.epsilon);
    };
    quad::Options o;
    o.epsrel = 1e-12;
    o.breakpoints = {p.tau_star};
    return p.R / p.tau_star * quad::integrate(integrand, 0.0, t, o).value;
}

double constant_a() {
    auto integrand = [](double x) { return std::exp(-x) * std::log(2.0 * x); };
    quad::Options o;
    o.epsrel = 1e-13;
    o.epsabs = 1e-15;
    // ln(2x) changes sign at x = 1/2.
    const double head = quad::integrate(integrand, 0.0, 0.5, o).value;
    const double tail = quad::integrate_to_infinity(integrand, 0.5, o).value;
    return head + tail;
}

KappaFactor kappa_factor(double temperature, double delta_min, double R) {
    if (!(R < 1.0)) {
        throw RegimeError("kappa: approximation valid only for R < 1");
    }
    if (!(R >= 0.0)) throw DomainError("kappa: R must be >= 0");
    if (!(temperature > 0.0) || !(delta_min > 0.0)) {
        throw DomainError("kappa: temperature and delta_min must be positive");
    }
    static const double a = constant_a();
    const double value = 2.0 * a + 2.0 * std::log(temperature / (delta_min * (1.0 - R)));
    return {value, temperature <= delta_min};
}

double example2_n(double kappa, double R, double gamma, double tau_star, double t) {
    if (!(t > tau_star)) {
        throw DomainError("post-minimum estimate is defined only for t > tau_star");
    }
    return kappa * R * std::exp(-gamma * (t - tau_star));
}

double alpha_example1(double gamma_tau, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
    return 2.0 * std::exp(-gamma_tau) * std::log(2.0 / epsilon);
}

double alpha_example2(double kappa, double gamma_tau) {
    if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
    return kappa * std::exp(-gamma_tau);
}

}  // namespace aqc
