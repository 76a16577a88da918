// closed_forms.hpp: analytic estimates of n(t) for an ohmic bath and constant mass
//
// Landau-Zener sweep, speed ratio R = γ·T·τ*/Δ_max, ε = Δ_min/Δ_max.
//
//   high-temperature sweep (Δ_max ≲ T):   n(t) ≈ λ(t)·R·e^{−γ(t−τ*)}
//   relaxation after the minimum (t > τ*): n(t) ≈ κ·R·e^{−γ(t−τ*)}
//
// with λ(t) = ln 2 − ln(√(ε² + u²) + u), u = 1 − t/τ*, and
// κ = 2a + 2·ln(T/(Δ_min(1 − R))), a = ∫₀^∞ e^{−x} ln(2x) dx.

#pragma once

namespace aqc {

struct ApproxParams {
    double R;                           // γ·T·τ*/Δ_max
    double gamma;
    double tau_star;
    double epsilon;                     // Δ_min/Δ_max
    double temperature_over_delta_min;  // T/Δ_min

    static ApproxParams from_landau_zener(double delta_max, double delta_min, double tau_star,
                                          double gamma, double temperature);
    void validate() const;

    double gamma_tau() const { return gamma * tau_star; }
    double temperature_over_delta_max() const { return temperature_over_delta_min * epsilon; }
    // V_S = Δ_max/τ* and V_B = γ·T, both in units of Δ_max; R = V_B/V_S.
    double sweep_speed() const { return 1.0 / tau_star; }
    double bath_speed() const { return gamma * temperature_over_delta_max(); }
};

// Where the high-temperature estimate is expected to hold: Δ_max ≤ T,
// ε ≪ 1 and γτ* < 1. Reported, never enforced.
struct Example1Regime {
    bool hot_sweep;
    bool small_epsilon;
    bool fast_compared_to_bath;
    bool holds() const { return hot_sweep && small_epsilon && fast_compared_to_bath; }
};
Example1Regime example1_regime(const ApproxParams& params);

// Stable for u < 0, where √(ε² + u²) + u cancels catastrophically; the
// equivalent ε²/(√(ε² + u²) − u) is used there. Slightly negative near
// u = 1 (t = 0); returned as is.
double lambda_factor(double epsilon, double u);

// λ(t)·R·e^{−γ(t−τ*)}.
double example1_n(const ApproxParams& params, double t);

// (R/τ*)·∫₀ᵗ e^{−γ(t−s)} / √((1 − s/τ*)² + ε²) ds by adaptive quadrature, i.e.
// the relaxation equation solved exactly with N = T/Δ and constant γ.
double example1_integral(const ApproxParams& params, double t);

// ∫₀^∞ e^{−x} ln(2x) dx by quadrature (= ln 2 − Euler's γ).
double constant_a();

struct KappaFactor {
    double value;
    // T ≤ Δ_min: outside the regime the formula was derived for.
    bool regime_warning;
};

// Throws RegimeError for R ≥ 1.
KappaFactor kappa_factor(double temperature, double delta_min, double R);

// κ·R·e^{−γ(t−τ*)}, defined only for t > τ*.
double example2_n(double kappa, double R, double gamma, double tau_star, double t);

// Prefactors in P_g ≈ 1/(1 + αR) implied by the two estimates at t = 2τ*.
double alpha_example1(double gamma_tau, double epsilon);
double alpha_example2(double kappa, double gamma_tau);

}  // namespace aqc
