#include "aqc_cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "aqc/closed_forms.hpp"
#include "aqc/csv_io.hpp"
#include "aqc/errors.hpp"
#include "aqc/oracle.hpp"

namespace aqc::cli {

namespace {

using nlohmann::json;

// Oracle tolerances checked by the `oracle` subcommand.
constexpr double kOracleScaledNTol = 1e-3;
constexpr double kOraclePgTol = 1e-3;
constexpr double kOracleSqueezingTol = 1e-12;
constexpr double kOracleTraceTol = 1e-10;
constexpr double kOracleHermiticityTol = 1e-10;
constexpr double kOracleDiagonalFloor = -1e-12;

// Destination chosen by --out; falls back to the caller's stream.
class Sink {
public:
    Sink(const RunConfig& config, std::ostream& fallback) : stream_(&fallback) {
        if (auto path = config.optional_text("out")) {
            file_ = std::make_unique<std::ofstream>(*path, std::ios::binary);
            if (!*file_) throw InputError("cannot open output file " + *path);
            stream_ = file_.get();
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open output file " + path);
    f << text << '\n';
}

bool json_format(const RunConfig& config) { return config.text("format") == "json"; }

std::string cell(double x) { return io::format_double(x); }

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(io::parse_double(item));
    if (out.empty()) throw InputError("'values' needs at least one number");
    return out;
}

GapSchedule build_schedule(const RunConfig& c) {
    const auto kind = c.text("schedule");
    const auto t_end = c.optional_number("t-end");
    if (kind == "landau-zener") {
        return GapSchedule::landau_zener(c.number("delta-max"), c.number("delta-min"),
                                         c.number("tau-star"), t_end);
    }
    if (kind == "constant") {
        const double delta = c.optional_number("delta").value_or(c.number("delta-max"));
        return GapSchedule::constant(delta, t_end.value_or(2.0 * c.number("tau-star")));
    }
    const auto path = c.optional_text("schedule-file");
    if (!path) throw InputError("schedule = tabulated needs schedule-file");
    return GapSchedule::from_csv_file(*path, t_end);
}

MassSchedule build_mass(const RunConfig& c) {
    if (auto path = c.optional_text("mass-file")) {
        std::vector<TimeSample> samples;
        for (const auto& s : io::read_xy_csv_file(*path)) samples.push_back({s.x, s.y});
        return MassSchedule::tabulated(std::move(samples));
    }
    return MassSchedule::constant(c.number("mass"));
}

BathSpec build_bath(const RunConfig& c) {
    const auto kind = c.text("bath");
    const double T = c.number("kT");
    if (kind == "ohmic") return BathSpec::ohmic(effective_gamma(c) * c.number("mass"), T);
    if (kind == "power-law") {
        return BathSpec::power_law(
            c.number("bath-prefactor"), c.number("bath-exponent"),
            c.optional_number("bath-cutoff").value_or(std::numeric_limits<double>::infinity()), T);
    }
    const auto path = c.optional_text("bath-file");
    if (!path) throw InputError("bath = tabulated needs bath-file");
    return BathSpec::from_csv_file(*path, T);
}

// The closed forms need the Landau-Zener sweep with an ohmic bath and constant mass.
void require_closed_form_setup(const RunConfig& c) {
    if (c.text("schedule") != "landau-zener" || c.text("bath") != "ohmic" ||
        c.has("mass-file")) {
        throw InputError(
            "approx needs schedule = landau-zener, bath = ohmic and a constant mass");
    }
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
    const auto params = build_params(c);
    Sink sink(c, out);
    const auto traj = solve_n_stepper(params);
    const auto summary = trajectory_summary_json(traj, params);
    if (json_format(c)) {
        sink.stream() << summary << '\n';
    } else {
        write_trajectory_csv(sink.stream(), traj);
    }
    if (auto path = c.optional_text("summary")) write_text_file(*path, summary);
    return kExitOk;
}

int cmd_approx(const RunConfig& c, std::ostream& out, std::ostream& err) {
    require_closed_form_setup(c);
    const auto params = build_params(c);
    const double dmax = c.number("delta-max");
    const double dmin = c.number("delta-min");
    const double tau = c.number("tau-star");
    const double T = c.number("kT");
    const auto approx = ApproxParams::from_landau_zener(dmax, dmin, tau, effective_gamma(c), T);
    const bool example2 = c.text("regime") == "example2";

    json meta;
    meta["regime"] = example2 ? "example2" : "example1";
    meta["R"] = approx.R;
    meta["epsilon"] = approx.epsilon;
    meta["gamma_tau"] = approx.gamma_tau();
    double kappa = 0.0;
    if (example2) {
        const auto k = kappa_factor(T, dmin, approx.R);
        kappa = k.value;
        meta["kappa"] = k.value;
        meta["kappa_regime_warning"] = k.regime_warning;
        if (k.regime_warning) err << "warning: kT <= delta-min, outside the kappa regime\n";
    } else {
        const auto r = example1_regime(approx);
        meta["example1_regime"] = {{"hot_sweep", r.hot_sweep},
                                   {"small_epsilon", r.small_epsilon},
                                   {"fast_compared_to_bath", r.fast_compared_to_bath},
                                   {"holds", r.holds()}};
        if (!r.holds()) err << "warning: parameters are outside the example1 regime\n";
    }

    Sink sink(c, out);
    const auto traj = solve_n_stepper(params);
    std::ostringstream csv;
    csv << "t,n_numeric,n_analytic,pg_numeric,pg_analytic,pg_equilibrium\n";
    std::size_t clamped = 0;
    double last_analytic = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : traj.rows) {
        csv << cell(row.t) << ',' << cell(row.n) << ',';
        const bool defined = !example2 || row.t > tau;
        double n_analytic = 0.0;
        if (defined) {
            n_analytic = example2 ? example2_n(kappa, approx.R, approx.gamma, tau, row.t)
                                  : example1_n(approx, row.t);
            last_analytic = n_analytic;
            csv << cell(n_analytic);
        }
        csv << ',' << cell(row.pg()) << ',';
        if (defined) {
            if (n_analytic < 0.0) ++clamped;
            csv << cell(ground_occupation(std::max(n_analytic, 0.0)));
        }
        csv << ',' << cell(equilibrium_occupation(row.delta, T)) << '\n';
    }
    meta["clamped_rows"] = clamped;
    meta["final"] = {{"t", traj.final().t},
                     {"n_numeric", traj.final().n},
                     {"n_analytic", std::isfinite(last_analytic) ? json(last_analytic) : json()}};
    if (clamped > 0) {
        err << "note: " << clamped
            << " rows with negative analytic n were clamped to 0 for pg_analytic\n";
    }
    if (json_format(c)) {
        sink.stream() << meta.dump(2) << '\n';
    } else {
        sink.stream() << csv.str();
    }
    if (auto path = c.optional_text("summary")) write_text_file(*path, meta.dump(2));
    return kExitOk;
}

int cmd_fit(const RunConfig& c, std::ostream& out) {
    if (c.boolean("table1")) {
        const auto report = table1_report();
        Sink sink(c, out);
        if (json_format(c)) {
            sink.stream() << table1_json(report) << '\n';
        } else {
            write_table1_csv(sink.stream(), report);
        }
        return kExitOk;
    }
    const auto path = c.optional_text("input");
    if (!path) throw InputError("fit needs an input CSV (or --table1)");
    std::ifstream in(*path);
    if (!in) throw InputError("cannot open fit input " + *path);
    const auto records = read_fit_csv(in, speed_ratio_spec(c));
    Sink sink(c, out);
    if (json_format(c)) {
        sink.stream() << fit_summary_json(records) << '\n';
    } else {
        write_fit_csv(sink.stream(), records);
    }
    return kExitOk;
}

int cmd_predict(const RunConfig& c, std::ostream& out) {
    const double alpha = c.number("alpha");
    const auto values = parse_value_list(c.text("values"));
    const bool by_temperature = c.text("by") == "kT";

    auto spec = speed_ratio_spec(c);
    const double scale = c.number("gap-scale");
    if (scale != 1.0) {
        const auto mode =
            c.text("gap-scaling") == "uniform" ? GapScaling::Uniform : GapScaling::MaximumOnly;
        const auto scaled = scale_gap(
            GapSchedule::landau_zener(spec.delta_max, spec.delta_min, spec.tau_star), scale, mode);
        spec.delta_max = scaled.delta_max();
        spec.delta_min = scaled.delta_min();
    }

    Sink sink(c, out);
    json rows = json::array();
    std::ostringstream csv;
    csv << (by_temperature ? "kT,pg\n" : "R,pg\n");
    for (double v : values) {
        double R = v;
        if (by_temperature) {
            spec.temperature = v;
            R = compute_R(spec);
        }
        const double pg = predict_pg(alpha, R);
        csv << cell(v) << ',' << cell(pg) << '\n';
        rows.push_back({{by_temperature ? "kT" : "R", v}, {"R", R}, {"pg", pg}});
    }
    if (json_format(c)) {
        sink.stream() << json{{"alpha", alpha}, {"rows", rows}}.dump(2) << '\n';
    } else {
        sink.stream() << csv.str();
    }
    return kExitOk;
}

int cmd_oracle(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto params = build_params(c);
    OracleOptions options;
    if (c.has("cutoff")) {
        options.initial_cutoff = c.count("cutoff");
        options.auto_cutoff = false;
    }
    Sink sink(c, out);
    const auto report = run_fock_oracle(params, options);
    sink.stream() << oracle_report_json(report, params) << '\n';

    std::vector<std::string> failures;
    if (report.max_scaled_n_error > kOracleScaledNTol) failures.push_back("mean excitation");
    if (report.max_abs_pg_error > kOraclePgTol) failures.push_back("ground population");
    if (!(report.max_abs_squeezing < kOracleSqueezingTol)) failures.push_back("squeezing moment");
    if (!(report.max_trace_error < kOracleTraceTol)) failures.push_back("trace");
    if (!(report.max_hermiticity_error < kOracleHermiticityTol)) failures.push_back("hermiticity");
    if (report.min_diagonal < kOracleDiagonalFloor) failures.push_back("positivity");
    for (const auto& f : failures) err << "oracle check failed: " << f << '\n';
    return failures.empty() ? kExitOk : kExitCheckFailed;
}

struct SweepPoint {
    std::vector<double> coords;
    double n = 0.0;
    double pg = 0.0;
    double R = 0.0;
};

int cmd_sweep(const RunConfig& c, std::ostream& out) {
    const auto specs = c.list("sweep");
    if (specs.empty()) throw InputError("sweep needs at least one --sweep key=min:max:count");
    if (specs.size() > 3) throw InputError("sweep supports at most 3 axes");
    std::vector<SweepAxis> axes;
    std::size_t total = 1;
    for (const auto& s : specs) {
        auto axis = parse_sweep_axis(s);
        for (const auto& a : axes) {
            if (a.key == axis.key) throw InputError("axis '" + axis.key + "' swept twice");
        }
        total *= axis.values.size();
        if (total > kMaxSweepPoints) {
            throw InputError("sweep exceeds " + std::to_string(kMaxSweepPoints) + " points");
        }
        axes.push_back(std::move(axis));
    }

    // Row-major enumeration: the first axis varies slowest.
    std::vector<SweepPoint> points(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        points[i].coords.resize(axes.size());
        for (std::size_t a = axes.size(); a-- > 0;) {
            points[i].coords[a] = axes[a].values[rest % axes[a].values.size()];
            rest /= axes[a].values.size();
        }
    }

    // Validate one configuration before fanning out.
    auto point_config = [&](const SweepPoint& p) {
        RunConfig pc = c;
        for (std::size_t a = 0; a < axes.size(); ++a) pc.set(axes[a].key, cell(p.coords[a]));
        pc.set("grid", "2");
        return pc;
    };
    build_params(point_config(points.front()));

    Sink sink(c, out);
    std::vector<std::exception_ptr> failures(total);
    auto solve_point = [&](std::size_t i) {
        try {
            const auto pc = point_config(points[i]);
            const auto params = build_params(pc);
            const auto last = solve_n_stepper(params).final();
            points[i].n = last.n;
            points[i].pg = last.pg();
            if (params.schedule.tau_star()) {
                auto spec = speed_ratio_spec(pc);
                spec.delta_max = params.schedule.delta_max();
                spec.delta_min = params.schedule.delta_min();
                spec.tau_star = *params.schedule.tau_star();
                points[i].R = compute_R(spec);
            } else {
                points[i].R = std::numeric_limits<double>::quiet_NaN();
            }
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };

    std::size_t workers = c.count("threads");
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, total);
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) solve_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < total; i = next++) solve_point(i);
            });
        }
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    if (json_format(c)) {
        json rows = json::array();
        for (const auto& p : points) {
            json row;
            for (std::size_t a = 0; a < axes.size(); ++a) row[axes[a].key] = p.coords[a];
            row["final_n"] = p.n;
            row["final_pg"] = p.pg;
            row["R"] = std::isfinite(p.R) ? json(p.R) : json();
            rows.push_back(row);
        }
        sink.stream() << rows.dump(2) << '\n';
    } else {
        auto& s = sink.stream();
        for (const auto& a : axes) s << a.key << ',';
        s << "final_n,final_pg,R\n";
        for (const auto& p : points) {
            for (double x : p.coords) s << cell(x) << ',';
            s << cell(p.n) << ',' << cell(p.pg) << ',' << (std::isfinite(p.R) ? cell(p.R) : "")
              << '\n';
        }
    }
    return kExitOk;
}

}  // namespace

double effective_gamma(const RunConfig& c) {
    if (auto gt = c.optional_number("gamma-tau")) return *gt / c.number("tau-star");
    return c.number("gamma");
}

SpeedRatioSpec speed_ratio_spec(const RunConfig& c) {
    return {effective_gamma(c), c.number("kT"),         c.number("tau-star"),
            c.number("delta-max"), c.number("delta-min"), c.boolean("generalized-R")};
}

SimParams build_params(const RunConfig& c) {
    auto params = SimParams::make(build_schedule(c), build_mass(c), build_bath(c), c.count("grid"));
    params.rtol = c.number("rtol");
    params.atol = c.number("atol");
    params.occupation = c.text("occupation") == "high-temperature"
                            ? OccupationModel::HighTemperature
                            : OccupationModel::BoseEinstein;
    params.validate();
    return params;
}

SweepAxis parse_sweep_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw InputError("sweep axis must look like key=min:max:count");
    SweepAxis axis;
    axis.key = text.substr(0, eq);
    const KeySpec* spec = find_key(axis.key);
    if (!spec || spec->type != KeyType::Number) {
        throw InputError("cannot sweep '" + axis.key + "': not a numeric key");
    }
    std::vector<std::string> parts;
    std::stringstream ss(text.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw InputError("sweep axis must look like key=min:max:count");
    const double lo = io::parse_double(parts[0]);
    const double hi = io::parse_double(parts[1]);
    const double count = io::parse_double(parts[2]);
    if (!(count >= 1.0) || count != std::floor(count)) {
        throw InputError("sweep count must be a positive integer");
    }
    if (count > static_cast<double>(kMaxSweepPoints)) {
        throw InputError("sweep exceeds " + std::to_string(kMaxSweepPoints) + " points");
    }
    const auto n = static_cast<std::size_t>(count);
    axis.values = n == 1 ? std::vector<double>{lo} : uniform_grid(lo, hi, n);
    std::sort(axis.values.begin(), axis.values.end());
    return axis;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thermal relaxation of a harmonic-oscillator adiabatic computation",
                 "aqc-thermal"};
    app.require_subcommand(1);

    struct Sub {
        std::string name;
        std::string help;
    };
    const std::vector<Sub> subs = {
        {"simulate", "integrate the excitation kinetics and write a trajectory"},
        {"approx", "compare the numeric n(t) with a closed-form estimate"},
        {"fit", "extract alpha from (kT, pg) or (R, pg) data"},
        {"table1", "refit the embedded exact-cover dataset (same as fit --table1)"},
        {"predict", "evaluate pg = 1/(1 + alpha R)"},
        {"oracle", "check the kinetics against the Fock-space master equation"},
        {"sweep", "run simulate over a grid of parameters"},
    };

    std::map<std::string, std::string> flag_store;
    std::vector<std::string> sweep_store;
    std::string config_path;
    std::string positional_input;
    std::map<std::string, std::vector<CLI::Option*>> options;
    std::vector<CLI::Option*> positional_options;
    std::map<std::string, CLI::App*> apps;

    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        apps[s.name] = sub;
        sub->add_option("--config", config_path, "flat key = value configuration file");
        for (const auto& key : known_keys()) {
            const std::string flag = "--" + std::string(key.name);
            const std::string help(key.help);
            CLI::Option* opt = nullptr;
            if (key.type == KeyType::List) {
                opt = sub->add_option(flag, sweep_store, help);
            } else if (key.name == "table1") {
                opt = sub->add_flag(flag, help);
            } else {
                opt = sub->add_option(flag, flag_store[std::string(key.name)], help);
            }
            options[std::string(key.name)].push_back(opt);
        }
        if (s.name == "fit") {
            positional_options.push_back(
                sub->add_option("file", positional_input, "fit input CSV (same as --input)"));
        }
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    std::string command;
    for (const auto& [name, sub] : apps) {
        if (sub->parsed()) command = name;
    }

    try {
        RunConfig config;
        if (!config_path.empty()) config.load_file(config_path);
        RunConfig flags;
        for (const auto& [key, opts] : options) {
            const bool given = std::any_of(opts.begin(), opts.end(),
                                           [](const CLI::Option* o) { return o->count() > 0; });
            if (!given) continue;
            if (key == "sweep") {
                for (const auto& v : sweep_store) flags.append(key, v);
            } else if (key == "table1") {
                flags.set(key, "true");
            } else {
                flags.set(key, flag_store[key]);
            }
        }
        if (!positional_options.empty() && positional_options.front()->count() > 0) {
            flags.set("input", positional_input);
        }
        if (command == "table1") flags.set("table1", "true");
        config.overlay(flags);

        if (command == "simulate") return cmd_simulate(config, out);
        if (command == "approx") return cmd_approx(config, out, err);
        if (command == "fit" || command == "table1") return cmd_fit(config, out);
        if (command == "predict") return cmd_predict(config, out);
        if (command == "oracle") return cmd_oracle(config, out, err);
        if (command == "sweep") return cmd_sweep(config, out);
        err << "unknown command\n";
        return kExitInput;
    } catch (const CutoffError& e) {
        err << "error: " << e.what() << "\nhint: rerun with --cutoff " << e.suggested_cutoff()
            << " (or omit --cutoff to double automatically)\n";
        return kExitCutoff;
    } catch (const RegimeError& e) {
        err << "regime error: " << e.what() << '\n';
        return kExitRegime;
    } catch (const IntegrationError& e) {
        err << "integration failed: " << e.what() << " (last good t = " << e.last_good_time()
            << ")\n";
        return kExitIntegration;
    } catch (const QuadratureError& e) {
        err << "quadrature failed: " << e.what() << '\n';
        return kExitIntegration;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const DomainError& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace aqc::cli
