// oracle.hpp: brute-force checks on the reduced excitation kinetics
//
//  * classical damped motion m ẍ + η ẋ + k x = 0 with k = m·Δ²,
//  * full density-matrix evolution of the RWA master equation in a truncated
//    number basis of the instantaneous Hamiltonian,
//  * Gaussian (second-moment) states and their overlap with the
//    instantaneous ground state.
//
// Quadratures are X = x·√(mΔ), P = p/√(mΔ) (ħ = 1), so the ground state has
// covariance ½·I.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "aqc/kinetics.hpp"

namespace aqc {

// Zero-mean single-mode Gaussian state.
struct GaussianState {
    double sigma_xx;
    double sigma_pp;
    double sigma_xp;  // ½⟨XP + PX⟩

    static GaussianState vacuum() { return {0.5, 0.5, 0.0}; }
    static GaussianState thermal(double n) { return {n + 0.5, n + 0.5, 0.0}; }
    // S(r)|0⟩ with X anti-squeezed: Σ = diag(e^{2r}/2, e^{−2r}/2).
    static GaussianState squeezed_vacuum(double r);

    double determinant() const { return sigma_xx * sigma_pp - sigma_xp * sigma_xp; }
    // Positive variances and the uncertainty bound det Σ ≥ 1/4.
    void validate() const;
};

// ⟨0|ρ|0⟩ for the instantaneous ground state: 1/√det(Σ + ½I). Reduces to
// 1/(1 + n) for Σ = (n + ½)I.
double gaussian_overlap(const GaussianState& state);

// ⟨a†a⟩ = (σ_XX + σ_PP − 1)/2.
double mean_excitation(const GaussianState& state);

// ⟨a²⟩ = (σ_XX − σ_PP)/2 + i·σ_XP; zero for phase-insensitive states.
std::complex<double> squeezing_moment(const GaussianState& state);

struct ClassicalSample {
    double t;
    double x;
    double v;
};

std::vector<ClassicalSample> classical_trajectory(const MassSchedule& mass, const BathSpec& bath,
                                                  const GapSchedule& schedule, double x0,
                                                  double v0, const std::vector<double>& grid,
                                                  const ode::Options& options = {});

// ½ m v² + ½ k x².
double classical_energy(const MassSchedule& mass, const GapSchedule& schedule,
                        const ClassicalSample& sample);

// Density matrix in the number basis |0⟩ … |cutoff − 1⟩, row-major.
class FockDensity {
public:
    explicit FockDensity(std::size_t cutoff);
    static FockDensity vacuum(std::size_t cutoff);
    static FockDensity from_real_vector(std::size_t cutoff, std::span<const double> packed);

    std::size_t cutoff() const noexcept { return cutoff_; }
    std::complex<double>& operator()(std::size_t j, std::size_t k) {
        return data_[j * cutoff_ + k];
    }
    const std::complex<double>& operator()(std::size_t j, std::size_t k) const {
        return data_[j * cutoff_ + k];
    }

    std::complex<double> trace() const;
    double mean_excitation() const;                  // Tr(a†a ρ)
    std::complex<double> squeezing_moment() const;   // Tr(a² ρ)
    double ground_population() const { return data_[0].real(); }
    double top_population() const { return data_.back().real(); }
    double hermiticity_defect() const;               // max |ρ − ρ†|
    double min_diagonal() const;

    // Interleaved (re, im) view used by the ODE integrator.
    std::vector<double> to_real_vector() const;

private:
    std::size_t cutoff_;
    std::vector<std::complex<double>> data_;
};

inline constexpr double kCutoffPopulationLimit = 1e-10;

using FockObserver = std::function<void(std::size_t index, double t, const FockDensity& rho)>;

// Evolves ρ(0) = |0⟩⟨0| under
//   dρ/dt = −i[Δ(t)(a†a + ½), ρ] + γ(N + 1)·D[a]ρ + γN·D[a†]ρ
// on params.output_grid. Throws CutoffError as soon as the top-level
// population reaches kCutoffPopulationLimit.
void lindblad_fock_evolve(const SimParams& params, std::size_t cutoff,
                          const FockObserver& observer);
std::vector<FockDensity> lindblad_fock_evolve(const SimParams& params, std::size_t cutoff);

struct OracleOptions {
    std::size_t initial_cutoff = 30;
    std::size_t max_cutoff = 960;
    bool auto_cutoff = true;  // double the cutoff until it is adequate
};

struct OracleReport {
    double max_abs_n_error = 0.0;      // |Tr(a†aρ) − n|
    double max_scaled_n_error = 0.0;   // |Tr(a†aρ) − n| / max(1, n)
    double max_abs_pg_error = 0.0;     // |ρ₀₀ − 1/(1 + n)|
    double max_abs_squeezing = 0.0;    // |Tr(a²ρ)|
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_diagonal = 0.0;
    double max_top_population = 0.0;
    double max_n = 0.0;
    std::size_t cutoff_used = 0;
};

// Runs the Fock evolution next to solve_n_stepper on the same grid.
OracleReport run_fock_oracle(const SimParams& params, const OracleOptions& options = {});

std::string oracle_report_json(const OracleReport& report, const SimParams& params);

}  // namespace aqc
