#include "aqc/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "aqc/csv_io.hpp"
#include "aqc/errors.hpp"
#include "aqc/quadrature.hpp"

namespace aqc {

namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> interior_breakpoints(const SimParams& p, double t) {
    auto cuts = p.schedule.breakpoints();
    for (double b : p.mass.breakpoints()) cuts.push_back(b);
    std::erase_if(cuts, [t](double b) { return !(b > 0.0 && b < t); });
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

// Γ(s) = ∫₀ˢ γ(u) du, cached at fixed nodes on [0, t_max]; evaluation adds
// one short adaptive integral from the nearest node below.
class CumulativeRate {
public:
    CumulativeRate(const SimParams& p, double t_max, double epsrel) : p_(p), epsrel_(epsrel) {
        nodes_ = uniform_grid(0.0, t_max, 65);
        for (double b : interior_breakpoints(p, t_max)) nodes_.push_back(b);
        std::sort(nodes_.begin(), nodes_.end());
        nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
        cumulative_.assign(nodes_.size(), 0.0);
        for (std::size_t i = 1; i < nodes_.size(); ++i) {
            cumulative_[i] = cumulative_[i - 1] + piece(nodes_[i - 1], nodes_[i]);
        }
    }

    double operator()(double s) const {
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s);
        const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
            0, std::distance(nodes_.begin(), it) - 1));
        return cumulative_[k] + piece(nodes_[k], s);
    }

private:
    double piece(double a, double b) const {
        if (b <= a) return 0.0;
        // An absolute error δ in Γ is a relative error δ in the result.
        quad::Options o;
        o.epsrel = epsrel_;
        o.epsabs = epsrel_;
        return quad::integrate([this](double u) { return p_.rate(u); }, a, b, o).value;
    }

    const SimParams& p_;
    double epsrel_;
    std::vector<double> nodes_;
    std::vector<double> cumulative_;
};

json schedule_json(const GapSchedule& s) {
    json j;
    std::visit(overloaded{
                   [&](const LandauZenerGap& g) {
                       j = {{"kind", "landau-zener"},
                            {"delta_max", g.delta_max},
                            {"delta_min", g.delta_min},
                            {"tau_star", g.tau_star}};
                   },
                   [&](const ConstantGap& g) { j = {{"kind", "constant"}, {"delta", g.delta}}; },
                   [&](const TabulatedGap& g) {
                       j = {{"kind", "tabulated"}, {"samples", g.samples.size()}};
                   },
               },
               s.kind());
    j["t_end"] = s.t_end();
    return j;
}

json bath_json(const BathSpec& b) {
    json j;
    std::visit(overloaded{
                   [&](const OhmicSpectrum& s) { j = {{"kind", "ohmic"}, {"eta0", s.eta0}}; },
                   [&](const PowerLawSpectrum& s) {
                       j = {{"kind", "power-law"},
                            {"prefactor", s.prefactor},
                            {"exponent", s.exponent}};
                       if (std::isfinite(s.cutoff)) j["cutoff"] = s.cutoff;
                   },
                   [&](const TabulatedSpectrum& s) {
                       j = {{"kind", "tabulated"}, {"samples", s.samples.size()}};
                   },
               },
               b.kind);
    j["temperature"] = b.temperature;
    return j;
}

json params_json(const SimParams& p) {
    json j;
    j["schedule"] = schedule_json(p.schedule);
    j["bath"] = bath_json(p.bath);
    if (const auto* m = std::get_if<ConstantMass>(&p.mass.kind())) {
        j["mass"] = {{"kind", "constant"}, {"m0", m->m0}};
    } else {
        j["mass"] = {{"kind", "tabulated"}};
    }
    j["grid_points"] = p.output_grid.size();
    j["rtol"] = p.rtol;
    j["atol"] = p.atol;
    j["occupation"] =
        p.occupation == OccupationModel::BoseEinstein ? "bose-einstein" : "high-temperature";
    return j;
}

}  // namespace

std::vector<double> uniform_grid(double t0, double t1, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {t1};
    std::vector<double> g(count);
    const double span = t1 - t0;
    const auto last = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        g[i] = t0 + span * (static_cast<double>(i) / last);
    }
    g.back() = t1;
    return g;
}

SimParams SimParams::make(GapSchedule schedule, MassSchedule mass, BathSpec bath,
                          std::size_t grid_points) {
    const double t_end = schedule.t_end();
    SimParams p{std::move(schedule), std::move(mass), std::move(bath),
                uniform_grid(0.0, t_end, grid_points)};
    p.validate();
    return p;
}

SimParams SimParams::landau_zener(double delta_max, double delta_min, double tau_star,
                                  double gamma, double temperature, std::size_t grid_points) {
    return make(GapSchedule::landau_zener(delta_max, delta_min, tau_star),
                MassSchedule::constant(1.0), BathSpec::ohmic(gamma, temperature), grid_points);
}

void SimParams::validate() const {
    bath.validate();
    if (!(rtol > 0.0) || !(atol > 0.0)) throw DomainError("rtol and atol must be positive");
    if (output_grid.empty()) throw DomainError("output grid is empty");
    for (std::size_t i = 0; i < output_grid.size(); ++i) {
        const double t = output_grid[i];
        if (!(t >= 0.0 && t <= schedule.t_end())) {
            throw DomainError("output grid leaves [0, t_end]");
        }
        if (i > 0 && !(t > output_grid[i - 1])) {
            throw DomainError("output grid must be strictly increasing");
        }
    }
}

double SimParams::target(double t) const {
    const double delta = gap(t);
    if (occupation == OccupationModel::HighTemperature) return bath.temperature / delta;
    return thermal_occupation(delta, bath.temperature);
}

double TrajectoryRow::pg() const { return 1.0 / (1.0 + n); }

double ground_occupation(double n) {
    if (!(n >= 0.0)) throw DomainError("mean excitation must be >= 0");
    return 1.0 / (1.0 + n);
}

double equilibrium_occupation(double delta, double temperature) {
    if (!(delta > 0.0)) throw DomainError("equilibrium occupation requires a positive gap");
    if (!(temperature >= 0.0)) throw DomainError("temperature must be >= 0");
    if (temperature == 0.0) return 1.0;
    return -std::expm1(-delta / temperature);
}

Trajectory solve_n_stepper(const SimParams& params) {
    params.validate();
    const bool constant_rate = params.has_constant_rate();
    const double gamma0 = constant_rate ? params.rate(0.0) : 0.0;

    ode::Rhs rhs = [&](double t, std::span<const double> y, std::span<double> dydt) {
        const double gamma = constant_rate ? gamma0 : params.rate(t);
        dydt[0] = -gamma * (y[0] - params.target(t));
    };

    std::vector<double> grid;
    grid.reserve(params.output_grid.size() + 1);
    const bool prepend_origin = params.output_grid.front() > 0.0;
    if (prepend_origin) grid.push_back(0.0);
    grid.insert(grid.end(), params.output_grid.begin(), params.output_grid.end());

    ode::Options opts;
    opts.rtol = params.rtol;
    opts.atol = params.atol;
    opts.breakpoints = interior_breakpoints(params, params.schedule.t_end());

    Trajectory traj;
    traj.rows.reserve(params.output_grid.size());
    const double y0[1] = {0.0};
    traj.stats = ode::integrate(
        rhs, y0, grid, opts, [&](std::size_t i, double t, std::span<const double> y) {
            if (prepend_origin && i == 0) return;
            traj.rows.push_back({t, params.gap(t), params.rate(t), params.target(t), y[0]});
        });
    return traj;
}

double solve_n_quadrature(const SimParams& params, double t, double epsrel) {
    params.validate();
    if (!(t >= 0.0 && t <= params.schedule.t_end())) {
        throw DomainError("quadrature time outside [0, t_end]");
    }
    if (t == 0.0 || params.bath.temperature == 0.0) return 0.0;

    quad::Options opts;
    opts.epsrel = epsrel;
    opts.breakpoints = interior_breakpoints(params, t);

    if (params.has_constant_rate()) {
        const double gamma = params.rate(0.0);
        auto integrand = [&](double s) {
            return gamma * params.target(s) * std::exp(-gamma * (t - s));
        };
        return quad::integrate(integrand, 0.0, t, opts).value;
    }

    const CumulativeRate cumulative(params, t, epsrel * 1e-2);
    const double total = cumulative(t);
    auto integrand = [&](double s) {
        return params.rate(s) * params.target(s) * std::exp(-(total - cumulative(s)));
    };
    return quad::integrate(integrand, 0.0, t, opts).value;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    out << "t,delta,gamma,N,n,pg\n";
    for (const auto& r : trajectory.rows) {
        out << io::format_double(r.t) << ',' << io::format_double(r.delta) << ','
            << io::format_double(r.gamma) << ',' << io::format_double(r.N) << ','
            << io::format_double(r.n) << ',' << io::format_double(r.pg()) << '\n';
    }
}

std::string trajectory_summary_json(const Trajectory& trajectory, const SimParams& params) {
    json j;
    const auto& last = trajectory.final();
    j["final_t"] = last.t;
    j["final_n"] = last.n;
    j["final_pg"] = last.pg();
    j["rows"] = trajectory.rows.size();
    j["steps_accepted"] = trajectory.stats.accepted;
    j["steps_rejected"] = trajectory.stats.rejected;
    j["params"] = params_json(params);
    return j.dump(2);
}

std::string describe_params_json(const SimParams& params) { return params_json(params).dump(2); }

}  // namespace aqc
