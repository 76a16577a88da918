// quadrature.hpp: globally adaptive Gauss-Kronrod (10/21-point) integration
//
// Bisects the interval with the largest error estimate until the total
// estimate meets max(epsabs, epsrel·|I|). Caller-supplied breakpoints start
// the subdivision, which matters for integrands with sharp interior peaks.
// The rule never evaluates at interval endpoints, so integrable endpoint
// singularities such as ln(x) at 0 are handled by repeated bisection.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace aqc::quad {

using Integrand = std::function<double(double)>;

struct Options {
    double epsabs = 0.0;
    double epsrel = 1e-12;
    std::size_t max_intervals = 4000;
    std::vector<double> breakpoints;  // interior points; others are ignored
};

struct Result {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    std::size_t intervals = 0;
    std::size_t evaluations = 0;
};

// Single 21-point Kronrod rule with the embedded 10-point Gauss error
// estimate on [a, b].
Result gauss_kronrod21(const Integrand& f, double a, double b);

// Throws QuadratureError (carrying the value and achieved error) when the
// tolerance is not met within max_intervals.
Result integrate(const Integrand& f, double a, double b, const Options& options = {});

// ∫_a^∞ f(x) dx via x = a + (1 − u)/u on u ∈ (0, 1].
Result integrate_to_infinity(const Integrand& f, double a, const Options& options = {});

}  // namespace aqc::quad
