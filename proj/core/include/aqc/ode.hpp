// ode.hpp: adaptive explicit Runge-Kutta integration (Dormand-Prince 5(4))
//
// Embedded 5(4) pair with FSAL, PI step-size control and the 4th-order
// continuous extension, so output can be sampled on an arbitrary grid
// without shortening steps. One integrator serves the excitation kinetics,
// the classical equation of motion and the Fock-space master equation.

#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace aqc::ode {

// dy/dt = f(t, y), written into dydt.
using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

// Called once per output time, in order.
using Observer = std::function<void(std::size_t index, double t, std::span<const double> y)>;

// How scaled local errors are combined into one acceptance measure.
enum class ErrorNorm { Rms, Max };

struct Options {
    double rtol = 1e-9;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0 selects a step from the local derivative scale
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 50'000'000;
    // Step boundaries are forced to land on these times (kinks, sharp peaks).
    std::vector<double> breakpoints;
    // Max suits large sparse states where RMS would dilute errors in a few components.
    ErrorNorm norm = ErrorNorm::Rms;
};

struct Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evaluations = 0;
};

// Integrates from grid.front() (where y = y0) through every grid time. The
// grid must be non-decreasing. Throws IntegrationError when the step size
// underflows or max_steps is exhausted.
Stats integrate(const Rhs& rhs, std::span<const double> y0, std::span<const double> grid,
                const Options& options, const Observer& observer);

// Convenience form storing every sample.
std::vector<std::vector<double>> integrate_dense(const Rhs& rhs, std::span<const double> y0,
                                                 std::span<const double> grid,
                                                 const Options& options = {});

}  // namespace aqc::ode
