// bath.hpp: heat-bath spectral densities and the rates they induce
//
// The bath enters only through J(ω). At the instantaneous gap it gives the
// friction η = π·J(Δ)/Δ, the relaxation rate γ = η/m and, with the
// temperature, the Bose-Einstein target occupation N = 1/(e^{Δ/T} − 1).

#pragma once

#include <filesystem>
#include <istream>
#include <limits>
#include <variant>
#include <vector>

#include "aqc/schedule.hpp"

namespace aqc {

// J(ω) = (η₀/π)·ω, so the friction is η₀ at every gap.
struct OhmicSpectrum {
    double eta0;
};

// J(ω) = prefactor·ω^exponent below a hard cutoff, 0 above it.
struct PowerLawSpectrum {
    double prefactor;
    double exponent;
    double cutoff = std::numeric_limits<double>::infinity();
};

// Linear interpolation of (ω, J) samples, zero outside the sampled range.
struct TabulatedSpectrum {
    struct Sample {
        double omega;
        double J;
    };
    std::vector<Sample> samples;
};

struct BathSpec {
    using Kind = std::variant<OhmicSpectrum, PowerLawSpectrum, TabulatedSpectrum>;

    Kind kind;
    double temperature = 0.0;  // k_B T

    static BathSpec ohmic(double eta0, double temperature);
    static BathSpec power_law(double prefactor, double exponent, double cutoff,
                              double temperature);
    static BathSpec tabulated(std::vector<TabulatedSpectrum::Sample> samples,
                              double temperature);
    static BathSpec from_csv(std::istream& in, double temperature);
    static BathSpec from_csv_file(const std::filesystem::path& path, double temperature);

    bool is_ohmic() const noexcept { return std::holds_alternative<OhmicSpectrum>(kind); }
    void validate() const;
};

double spectral_density(const BathSpec& bath, double omega);

// η(Δ) = π·J(Δ)/Δ. Returned exactly as η₀ for an ohmic bath.
double friction(const BathSpec& bath, double delta);

// γ(t) = η(Δ(t)) / m(t).
double relaxation_rate(const BathSpec& bath, const MassSchedule& mass,
                       const GapSchedule& schedule, double t);

// Bose-Einstein occupation 1/(e^{Δ/T} − 1) via expm1. Zero for T = 0 and for
// Δ/T > 700, where the true value is below the smallest normal double.
double thermal_occupation(double delta, double temperature);

}  // namespace aqc
