// kinetics.hpp: mean excitation n(t) of the oscillator in a thermal bath
//
// The reduced dynamics is the scalar relaxation equation
//
//     dn/dt = −γ(t)·(n − N(t)),   n(0) = 0,
//
// and the instantaneous ground-state occupation follows as P_g = 1/(1 + n).
// Two independent solution paths are provided: adaptive Runge-Kutta
// stepping and an integrating-factor quadrature.

#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "aqc/bath.hpp"
#include "aqc/ode.hpp"
#include "aqc/schedule.hpp"

namespace aqc {

// Target occupation entering the relaxation equation.
enum class OccupationModel {
    BoseEinstein,     // N = 1/(e^{Δ/T} − 1)
    HighTemperature,  // N ≈ T/Δ, the classical limit used by the Example-I estimate
};

std::vector<double> uniform_grid(double t0, double t1, std::size_t count);

struct SimParams {
    GapSchedule schedule;
    MassSchedule mass = MassSchedule::constant(1.0);
    BathSpec bath;
    std::vector<double> output_grid;  // default: 1000 uniform points on [0, t_end]
    double rtol = 1e-9;
    double atol = 1e-12;
    OccupationModel occupation = OccupationModel::BoseEinstein;

    static SimParams make(GapSchedule schedule, MassSchedule mass, BathSpec bath,
                          std::size_t grid_points = 1000);
    // Landau-Zener gap, unit mass, ohmic bath with γ = η₀.
    static SimParams landau_zener(double delta_max, double delta_min, double tau_star,
                                  double gamma, double temperature,
                                  std::size_t grid_points = 1000);

    void validate() const;

    double gap(double t) const { return gap_at(schedule, t); }
    double rate(double t) const { return relaxation_rate(bath, mass, schedule, t); }
    double target(double t) const;
    // γ(t) is constant for an ohmic bath with constant mass.
    bool has_constant_rate() const { return bath.is_ohmic() && mass.is_constant(); }
};

// One sample of a trajectory. P_g is derived from n on demand and never
// stored independently.
struct TrajectoryRow {
    double t;
    double delta;
    double gamma;
    double N;
    double n;

    double pg() const;
};

struct Trajectory {
    std::vector<TrajectoryRow> rows;
    ode::Stats stats;

    const TrajectoryRow& final() const { return rows.back(); }
};

// P_g = 1/(1 + n).
double ground_occupation(double n);

// Thermal-equilibrium ground occupation 1 − e^{−Δ/T}; equals
// ground_occupation(thermal_occupation(Δ, T)).
double equilibrium_occupation(double delta, double temperature);

Trajectory solve_n_stepper(const SimParams& params);

// n(t) = ∫₀ᵗ γ(s)N(s)·exp(−∫ₛᵗ γ(u)du) ds by adaptive quadrature, with forced
// subdivision at the schedule's breakpoints (τ* for Landau-Zener).
double solve_n_quadrature(const SimParams& params, double t, double epsrel = 1e-12);

// CSV with header t,delta,gamma,N,n,pg and 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

// {"final_n", "final_pg", "final_t", "rows", "params": {...}}.
std::string trajectory_summary_json(const Trajectory& trajectory, const SimParams& params);

std::string describe_params_json(const SimParams& params);

}  // namespace aqc
