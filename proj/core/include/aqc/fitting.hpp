// fitting.hpp: the P_g ≈ 1/(1 + αR) fitting law and gap-scaling extrapolation

#pragma once

#include <array>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "aqc/schedule.hpp"

namespace aqc {

struct SpeedRatioSpec {
    double gamma;
    double temperature;
    double tau_star;
    double delta_max;
    double delta_min = 0.0;
    bool generalized = true;  // divide by Δ_max − Δ_min instead of Δ_max
};

// γ·T·τ*/Δ_max, or γ·T·τ*/(Δ_max − Δ_min) when generalized.
double compute_R(const SpeedRatioSpec& spec);

// (1/P_g − 1)/R.
double extract_alpha(double pg, double R);

// 1/(1 + αR).
double predict_pg(double alpha, double R);

struct FitRecord {
    double temperature;  // NaN when the input carried R directly
    double pg;
    double R;
    double alpha;

    static FitRecord from_measurement(double pg, double R, double temperature);
};

struct AlphaSummary {
    double mean = 0.0;
    double stddev = 0.0;        // population standard deviation
    double relative_std = 0.0;  // stddev / mean
    std::size_t count = 0;
};

AlphaSummary summarize_alpha(const std::vector<FitRecord>& records);

// Single α minimising Σ (P_g − 1/(1 + αR))² over all records.
double least_squares_alpha(const std::vector<FitRecord>& records);

// Published ground-state probabilities for the three-bit exact-cover
// adiabatic algorithm (energies in units of Δ_max), refitted per row.
struct Table1Dataset {
    std::string label;
    double delta_min;
    std::vector<FitRecord> rows;
    std::vector<double> published_R;
    std::vector<double> published_alpha;
    AlphaSummary summary;  // excludes the k_B T = 10 row
};

struct Table1Report {
    double gamma_tau;  // 1, inferred from the published R column
    std::array<Table1Dataset, 2> datasets;
};

Table1Report table1_report();

enum class GapScaling {
    Uniform,       // Δ_max and Δ_min both shrink by Γ_N (ε fixed)
    MaximumOnly,   // only Δ_max shrinks
};

// Δ_max → Γ_N·Δ_max for a larger problem instance with the same τ* and γ.
GapSchedule scale_gap(const GapSchedule& schedule, double gamma_N,
                      GapScaling mode = GapScaling::Uniform);

// Input tables: header "kT,pg" (R is computed from `base` with each row's
// temperature) or "R,pg".
std::vector<FitRecord> read_fit_csv(std::istream& in, const SpeedRatioSpec& base);

void write_fit_csv(std::ostream& out, const std::vector<FitRecord>& records);
std::string fit_summary_json(const std::vector<FitRecord>& records);
void write_table1_csv(std::ostream& out, const Table1Report& report);
std::string table1_json(const Table1Report& report);

}  // namespace aqc
