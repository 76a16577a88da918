#include "aqc/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <json.hpp>

#include "aqc/csv_io.hpp"
#include "aqc/errors.hpp"

namespace aqc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Temperatures (units of Δ_max) shared by both published datasets.
constexpr std::array<double, 5> kTable1Temperatures = {0.1, 0.5, 1.0, 2.0, 10.0};

nlohmann::json number_or_null(double x) {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

nlohmann::json summary_json(const AlphaSummary& s) {
    return {{"mean", s.mean},
            {"stddev", s.stddev},
            {"relative_std", s.relative_std},
            {"count", s.count}};
}

}  // namespace

double compute_R(const SpeedRatioSpec& s) {
    if (!(s.gamma > 0.0) || !(s.temperature > 0.0) || !(s.tau_star > 0.0) ||
        !(s.delta_max > 0.0)) {
        throw DomainError("speed ratio needs positive gamma, temperature, tau_star, delta_max");
    }
    double scale = s.delta_max;
    if (s.generalized) {
        if (!(s.delta_min >= 0.0) || !(s.delta_min < s.delta_max)) {
            throw DomainError("generalized speed ratio needs 0 <= delta_min < delta_max");
        }
        scale = s.delta_max - s.delta_min;
    }
    return s.gamma * s.temperature * s.tau_star / scale;
}

double extract_alpha(double pg, double R) {
    if (!(pg > 0.0 && pg <= 1.0)) throw DomainError("P_g must lie in (0, 1]");
    if (!(R > 0.0)) throw DomainError("R must be positive");
    return (1.0 / pg - 1.0) / R;
}

double predict_pg(double alpha, double R) {
    if (!(alpha >= 0.0) || !(R >= 0.0)) throw DomainError("alpha and R must be >= 0");
    return 1.0 / (1.0 + alpha * R);
}

FitRecord FitRecord::from_measurement(double pg, double R, double temperature) {
    return {temperature, pg, R, extract_alpha(pg, R)};
}

AlphaSummary summarize_alpha(const std::vector<FitRecord>& records) {
    AlphaSummary s;
    s.count = records.size();
    if (records.empty()) return s;
    double sum = 0.0;
    for (const auto& r : records) sum += r.alpha;
    s.mean = sum / static_cast<double>(records.size());
    double ss = 0.0;
    for (const auto& r : records) ss += (r.alpha - s.mean) * (r.alpha - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(records.size()));
    s.relative_std = s.mean != 0.0 ? s.stddev / s.mean : 0.0;
    return s;
}

double least_squares_alpha(const std::vector<FitRecord>& records) {
    if (records.empty()) throw DomainError("least-squares fit needs at least one record");
    double upper = 1.0;
    for (const auto& r : records) upper = std::max(upper, 10.0 * r.alpha);
    auto loss = [&](double alpha) {
        double sum = 0.0;
        for (const auto& r : records) {
            const double d = r.pg - 1.0 / (1.0 + alpha * r.R);
            sum += d * d;
        }
        return sum;
    };
    const auto [alpha, value] =
        boost::math::tools::brent_find_minima(loss, 0.0, upper, std::numeric_limits<double>::digits / 2);
    (void)value;
    return alpha;
}

Table1Report table1_report() {
    Table1Report report;
    report.gamma_tau = 1.0;

    struct Published {
        const char* label;
        double delta_min;
        std::array<double, 5> pg;
        std::array<double, 5> R;
        std::array<double, 5> alpha;
    };
    const std::array<Published, 2> published = {{
        {"I", 0.301, {0.79, 0.53, 0.30, 0.15, 0.08}, {0.14, 0.72, 1.43, 2.86, 14.3},
         {1.86, 1.24, 1.63, 1.98, 0.80}},
        {"II", 0.425, {0.89, 0.70, 0.42, 0.19, 0.08}, {0.17, 0.87, 1.74, 3.48, 17.4},
         {0.71, 0.49, 0.79, 1.23, 0.66}},
    }};

    for (std::size_t d = 0; d < published.size(); ++d) {
        const auto& src = published[d];
        auto& out = report.datasets[d];
        out.label = src.label;
        out.delta_min = src.delta_min;
        std::vector<FitRecord> low_temperature;
        for (std::size_t i = 0; i < kTable1Temperatures.size(); ++i) {
            const SpeedRatioSpec spec{report.gamma_tau, kTable1Temperatures[i], 1.0, 1.0,
                                      src.delta_min, true};
            const auto rec =
                FitRecord::from_measurement(src.pg[i], compute_R(spec), kTable1Temperatures[i]);
            out.rows.push_back(rec);
            out.published_R.push_back(src.R[i]);
            out.published_alpha.push_back(src.alpha[i]);
            if (kTable1Temperatures[i] < 10.0) low_temperature.push_back(rec);
        }
        out.summary = summarize_alpha(low_temperature);
    }
    return report;
}

GapSchedule scale_gap(const GapSchedule& schedule, double gamma_N, GapScaling mode) {
    if (!(gamma_N > 0.0)) throw DomainError("gap scaling factor must be positive");
    if (gamma_N > 1.0) throw DomainError("gap scaling factor must not exceed 1");
    return schedule.scaled(gamma_N, mode == GapScaling::Uniform);
}

std::vector<FitRecord> read_fit_csv(std::istream& in, const SpeedRatioSpec& base) {
    const auto table = io::read_csv(in);
    if (table.header.size() != 2) {
        throw InputError("fit input needs a header 'kT,pg' or 'R,pg'");
    }
    const bool by_temperature = table.header[0] == "kT" && table.header[1] == "pg";
    const bool by_ratio = table.header[0] == "R" && table.header[1] == "pg";
    if (!by_temperature && !by_ratio) {
        throw InputError("fit input header must be 'kT,pg' or 'R,pg'");
    }
    if (table.rows.empty()) throw InputError("fit input has no rows");
    std::vector<FitRecord> out;
    for (const auto& row : table.rows) {
        const double first = io::parse_double(row[0]);
        const double pg = io::parse_double(row[1]);
        try {
            if (by_temperature) {
                SpeedRatioSpec spec = base;
                spec.temperature = first;
                out.push_back(FitRecord::from_measurement(pg, compute_R(spec), first));
            } else {
                out.push_back(FitRecord::from_measurement(pg, first, kNaN));
            }
        } catch (const DomainError& e) {
            throw InputError(std::string("fit input row rejected: ") + e.what());
        }
    }
    return out;
}

void write_fit_csv(std::ostream& out, const std::vector<FitRecord>& records) {
    out << "kT,pg,R,alpha\n";
    for (const auto& r : records) {
        out << (std::isfinite(r.temperature) ? io::format_double(r.temperature) : "") << ','
            << io::format_double(r.pg) << ',' << io::format_double(r.R) << ','
            << io::format_double(r.alpha) << '\n';
    }
}

std::string fit_summary_json(const std::vector<FitRecord>& records) {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : records) {
        j["rows"].push_back({{"kT", number_or_null(r.temperature)},
                             {"pg", r.pg},
                             {"R", r.R},
                             {"alpha", r.alpha}});
    }
    j["summary"] = summary_json(summarize_alpha(records));
    j["least_squares_alpha"] = least_squares_alpha(records);
    return j.dump(2);
}

void write_table1_csv(std::ostream& out, const Table1Report& report) {
    out << "dataset,delta_min,kT,pg,R,alpha,published_R,published_alpha\n";
    for (const auto& d : report.datasets) {
        for (std::size_t i = 0; i < d.rows.size(); ++i) {
            const auto& r = d.rows[i];
            out << d.label << ',' << io::format_double(d.delta_min) << ','
                << io::format_double(r.temperature) << ',' << io::format_double(r.pg) << ','
                << io::format_double(r.R) << ',' << io::format_double(r.alpha) << ','
                << io::format_double(d.published_R[i]) << ','
                << io::format_double(d.published_alpha[i]) << '\n';
        }
    }
}

std::string table1_json(const Table1Report& report) {
    nlohmann::json j;
    j["gamma_tau"] = report.gamma_tau;
    j["datasets"] = nlohmann::json::array();
    for (const auto& d : report.datasets) {
        nlohmann::json dj;
        dj["label"] = d.label;
        dj["delta_min"] = d.delta_min;
        dj["rows"] = nlohmann::json::array();
        for (std::size_t i = 0; i < d.rows.size(); ++i) {
            const auto& r = d.rows[i];
            dj["rows"].push_back({{"kT", r.temperature},
                                  {"pg", r.pg},
                                  {"R", r.R},
                                  {"alpha", r.alpha},
                                  {"published_R", d.published_R[i]},
                                  {"published_alpha", d.published_alpha[i]}});
        }
        dj["summary_excluding_kT_10"] = summary_json(d.summary);
        j["datasets"].push_back(dj);
    }
    return j.dump(2);
}

}  // namespace aqc
