// schedule.hpp: time-dependent gap Δ(t) and mass m(t) of the driven oscillator
//
// Natural units: ħ = k_B = 1. Energies are usually measured in units of the
// maximal gap and times in units of its inverse. The spring constant is
// implied by k(t) = m(t)·Δ(t)².

#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <variant>
#include <vector>

namespace aqc {

struct TimeSample {
    double t;
    double value;
};

// Δ(t) = sqrt(Δ_max²(1 − t/τ*)² + Δ_min²); minimum Δ_min at t = τ*.
struct LandauZenerGap {
    double delta_max;
    double delta_min;
    double tau_star;
};

struct ConstantGap {
    double delta;
};

// Piecewise-linear interpolation between strictly increasing sample times.
struct TabulatedGap {
    std::vector<TimeSample> samples;
};

class GapSchedule {
public:
    using Kind = std::variant<LandauZenerGap, ConstantGap, TabulatedGap>;

    // t_end defaults to 2τ*, where the gap is back to ≈ Δ_max.
    static GapSchedule landau_zener(double delta_max, double delta_min, double tau_star,
                                    std::optional<double> t_end = std::nullopt);
    static GapSchedule constant(double delta, double t_end);
    // t_end defaults to the last sample time.
    static GapSchedule tabulated(std::vector<TimeSample> samples,
                                 std::optional<double> t_end = std::nullopt);
    static GapSchedule from_csv(std::istream& in, std::optional<double> t_end = std::nullopt);
    static GapSchedule from_csv_file(const std::filesystem::path& path,
                                     std::optional<double> t_end = std::nullopt);

    const Kind& kind() const noexcept { return kind_; }
    double t_end() const noexcept { return t_end_; }

    bool is_landau_zener() const noexcept {
        return std::holds_alternative<LandauZenerGap>(kind_);
    }
    bool is_constant() const noexcept { return std::holds_alternative<ConstantGap>(kind_); }

    // Largest and smallest gap over [0, t_end] (for Landau-Zener: the
    // nominal Δ_max / Δ_min parameters).
    double delta_max() const;
    double delta_min() const;
    // Location of the gap minimum, when the schedule has a distinguished one.
    std::optional<double> tau_star() const;
    // ε ≡ Δ_min/Δ_max.
    double epsilon() const { return delta_min() / delta_max(); }

    // Interior times where the gap (or its derivative) is not smooth or is
    // sharply peaked; integrators must not step across them blindly.
    std::vector<double> breakpoints() const;

    // Same schedule with every energy multiplied by `factor`.
    GapSchedule scaled(double factor, bool scale_minimum = true) const;

private:
    GapSchedule(Kind kind, double t_end);

    Kind kind_;
    double t_end_;
};

double gap_at(const GapSchedule& schedule, double t);

// E_n(t) = (n + 1/2)·Δ(t).
double eigen_energy(const GapSchedule& schedule, int n, double t);

// dΔ/dt: analytic for Landau-Zener and constant schedules, segment slope for
// tabulated ones.
double gap_rate(const GapSchedule& schedule, double t);

struct ConstantMass {
    double m0;
};

struct TabulatedMass {
    std::vector<TimeSample> samples;
};

// m(t); tabulated masses are held constant beyond the first and last sample.
class MassSchedule {
public:
    using Kind = std::variant<ConstantMass, TabulatedMass>;

    static MassSchedule constant(double m0);
    static MassSchedule tabulated(std::vector<TimeSample> samples);

    const Kind& kind() const noexcept { return kind_; }
    bool is_constant() const noexcept { return std::holds_alternative<ConstantMass>(kind_); }
    double at(double t) const;
    std::vector<double> breakpoints() const;

private:
    explicit MassSchedule(Kind kind) : kind_(std::move(kind)) {}
    Kind kind_;
};

// k(t) = m(t)·Δ(t)².
double spring_constant(const MassSchedule& mass, const GapSchedule& schedule, double t);

}  // namespace aqc
