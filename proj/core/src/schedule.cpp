#include "aqc/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "aqc/csv_io.hpp"
#include "aqc/errors.hpp"

namespace aqc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_samples(const std::vector<TimeSample>& samples, const char* what) {
    if (samples.empty()) throw DomainError(std::string(what) + ": no samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i].t) || !std::isfinite(samples[i].value)) {
            throw DomainError(std::string(what) + ": non-finite sample");
        }
        if (!(samples[i].value > 0.0)) {
            throw DomainError(std::string(what) + ": values must be positive");
        }
        if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
            throw DomainError(std::string(what) + ": times must be strictly increasing");
        }
    }
}

// Index of the segment [i, i+1] containing t (clamped to the ends).
std::size_t segment_of(const std::vector<TimeSample>& s, double t) {
    const auto it = std::upper_bound(s.begin(), s.end(), t,
                                     [](double v, const TimeSample& x) { return v < x.t; });
    const auto idx = static_cast<std::size_t>(std::distance(s.begin(), it));
    if (idx == 0) return 0;
    return std::min(idx - 1, s.size() - 2);
}

double interpolate(const std::vector<TimeSample>& s, double t) {
    if (s.size() == 1 || t <= s.front().t) return s.front().value;
    if (t >= s.back().t) return s.back().value;
    const auto i = segment_of(s, t);
    const auto& a = s[i];
    const auto& b = s[i + 1];
    const double w = (t - a.t) / (b.t - a.t);
    return a.value + w * (b.value - a.value);
}

double slope(const std::vector<TimeSample>& s, double t) {
    if (s.size() == 1) return 0.0;
    const auto i = segment_of(s, t);
    return (s[i + 1].value - s[i].value) / (s[i + 1].t - s[i].t);
}

std::vector<TimeSample> to_time_samples(const std::vector<io::XYSample>& xy) {
    std::vector<TimeSample> out;
    out.reserve(xy.size());
    for (const auto& p : xy) out.push_back({p.x, p.y});
    return out;
}

// Accepts tiny overshoot from floating-point grid arithmetic.
double checked_time(const GapSchedule& s, double t) {
    const double slack = 1e-12 * std::max(1.0, s.t_end());
    if (!(t >= -slack && t <= s.t_end() + slack)) {
        std::ostringstream msg;
        msg << "time " << t << " outside schedule domain [0, " << s.t_end() << "]";
        throw DomainError(msg.str());
    }
    return std::clamp(t, 0.0, s.t_end());
}

}  // namespace

GapSchedule::GapSchedule(Kind kind, double t_end) : kind_(std::move(kind)), t_end_(t_end) {
    if (!(t_end_ > 0.0) || !std::isfinite(t_end_)) {
        throw DomainError("schedule t_end must be positive and finite");
    }
}

GapSchedule GapSchedule::landau_zener(double delta_max, double delta_min, double tau_star,
                                      std::optional<double> t_end) {
    if (!(delta_min > 0.0) || !(delta_max >= delta_min) || !std::isfinite(delta_max)) {
        throw DomainError("Landau-Zener gap requires 0 < delta_min <= delta_max");
    }
    if (!(tau_star > 0.0) || !std::isfinite(tau_star)) {
        throw DomainError("Landau-Zener gap requires tau_star > 0");
    }
    return GapSchedule(LandauZenerGap{delta_max, delta_min, tau_star},
                       t_end.value_or(2.0 * tau_star));
}

GapSchedule GapSchedule::constant(double delta, double t_end) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw DomainError("constant gap must be positive");
    }
    return GapSchedule(ConstantGap{delta}, t_end);
}

GapSchedule GapSchedule::tabulated(std::vector<TimeSample> samples,
                                   std::optional<double> t_end) {
    check_samples(samples, "tabulated gap");
    if (samples.front().t > 0.0) {
        throw DomainError("tabulated gap must start at t <= 0");
    }
    const double end = t_end.value_or(samples.back().t);
    if (end > samples.back().t) {
        throw DomainError("tabulated gap does not cover [0, t_end]");
    }
    return GapSchedule(TabulatedGap{std::move(samples)}, end);
}

GapSchedule GapSchedule::from_csv(std::istream& in, std::optional<double> t_end) {
    return tabulated(to_time_samples(io::read_xy_csv(in)), t_end);
}

GapSchedule GapSchedule::from_csv_file(const std::filesystem::path& path,
                                       std::optional<double> t_end) {
    return tabulated(to_time_samples(io::read_xy_csv_file(path)), t_end);
}

double GapSchedule::delta_max() const {
    return std::visit(overloaded{
                          [](const LandauZenerGap& g) { return g.delta_max; },
                          [](const ConstantGap& g) { return g.delta; },
                          [](const TabulatedGap& g) {
                              double m = 0.0;
                              for (const auto& s : g.samples) m = std::max(m, s.value);
                              return m;
                          },
                      },
                      kind_);
}

double GapSchedule::delta_min() const {
    return std::visit(overloaded{
                          [](const LandauZenerGap& g) { return g.delta_min; },
                          [](const ConstantGap& g) { return g.delta; },
                          [](const TabulatedGap& g) {
                              double m = g.samples.front().value;
                              for (const auto& s : g.samples) m = std::min(m, s.value);
                              return m;
                          },
                      },
                      kind_);
}

std::optional<double> GapSchedule::tau_star() const {
    return std::visit(overloaded{
                          [](const LandauZenerGap& g) -> std::optional<double> {
                              return g.tau_star;
                          },
                          [](const ConstantGap&) -> std::optional<double> {
                              return std::nullopt;
                          },
                          [](const TabulatedGap& g) -> std::optional<double> {
                              const auto it = std::min_element(
                                  g.samples.begin(), g.samples.end(),
                                  [](const auto& a, const auto& b) { return a.value < b.value; });
                              return it->t;
                          },
                      },
                      kind_);
}

std::vector<double> GapSchedule::breakpoints() const {
    std::vector<double> out;
    std::visit(overloaded{
                   [&](const LandauZenerGap& g) { out.push_back(g.tau_star); },
                   [](const ConstantGap&) {},
                   [&](const TabulatedGap& g) {
                       for (const auto& s : g.samples) out.push_back(s.t);
                   },
               },
               kind_);
    std::erase_if(out, [&](double t) { return !(t > 0.0 && t < t_end_); });
    return out;
}

GapSchedule GapSchedule::scaled(double factor, bool scale_minimum) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw DomainError("gap scaling factor must be positive");
    }
    return std::visit(
        overloaded{
            [&](const LandauZenerGap& g) {
                const double dmin = scale_minimum ? factor * g.delta_min : g.delta_min;
                return landau_zener(factor * g.delta_max, std::min(dmin, factor * g.delta_max),
                                    g.tau_star, t_end_);
            },
            [&](const ConstantGap& g) { return constant(factor * g.delta, t_end_); },
            [&](const TabulatedGap& g) {
                auto samples = g.samples;
                for (auto& s : samples) s.value *= factor;
                return tabulated(std::move(samples), t_end_);
            },
        },
        kind_);
}

double gap_at(const GapSchedule& schedule, double t) {
    t = checked_time(schedule, t);
    return std::visit(overloaded{
                          [t](const LandauZenerGap& g) {
                              // hypot keeps Δ(τ*) == Δ_min exactly.
                              return std::hypot(g.delta_max * ((g.tau_star - t) / g.tau_star),
                                                g.delta_min);
                          },
                          [](const ConstantGap& g) { return g.delta; },
                          [t](const TabulatedGap& g) { return interpolate(g.samples, t); },
                      },
                      schedule.kind());
}

double eigen_energy(const GapSchedule& schedule, int n, double t) {
    if (n < 0) throw DomainError("level index must be non-negative");
    return (n + 0.5) * gap_at(schedule, t);
}

double gap_rate(const GapSchedule& schedule, double t) {
    t = checked_time(schedule, t);
    return std::visit(overloaded{
                          [t](const LandauZenerGap& g) {
                              const double u = (g.tau_star - t) / g.tau_star;
                              const double delta = std::hypot(g.delta_max * u, g.delta_min);
                              return -g.delta_max * g.delta_max * u / (g.tau_star * delta);
                          },
                          [](const ConstantGap&) { return 0.0; },
                          [t](const TabulatedGap& g) { return slope(g.samples, t); },
                      },
                      schedule.kind());
}

MassSchedule MassSchedule::constant(double m0) {
    if (!(m0 > 0.0) || !std::isfinite(m0)) throw DomainError("mass must be positive");
    return MassSchedule(ConstantMass{m0});
}

MassSchedule MassSchedule::tabulated(std::vector<TimeSample> samples) {
    check_samples(samples, "tabulated mass");
    return MassSchedule(TabulatedMass{std::move(samples)});
}

double MassSchedule::at(double t) const {
    return std::visit(overloaded{
                          [](const ConstantMass& m) { return m.m0; },
                          [t](const TabulatedMass& m) { return interpolate(m.samples, t); },
                      },
                      kind_);
}

std::vector<double> MassSchedule::breakpoints() const {
    std::vector<double> out;
    if (const auto* m = std::get_if<TabulatedMass>(&kind_)) {
        for (const auto& s : m->samples) out.push_back(s.t);
    }
    return out;
}

double spring_constant(const MassSchedule& mass, const GapSchedule& schedule, double t) {
    const double delta = gap_at(schedule, t);
    return mass.at(t) * delta * delta;
}

}  // namespace aqc
