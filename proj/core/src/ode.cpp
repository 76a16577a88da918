#include "aqc/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aqc/errors.hpp"

namespace aqc::ode {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// Difference between the 5th- and 4th-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension (Hairer, Nørsett & Wanner, DOPRI5 dense output).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// PI controller constants.
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kSafety = 0.9;
constexpr double kMaxShrink = 5.0;   // h_new >= h / 5
constexpr double kMaxGrowth = 0.1;   // h_new <= h * 10

constexpr double kUround = 2.3e-16;

double error_norm(std::span<const double> err, std::span<const double> y0,
                  std::span<const double> y1, const Options& o) {
    double sum = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < err.size(); ++i) {
        const double sk = o.atol + o.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = err[i] / sk;
        sum += r * r;
        worst = std::max(worst, std::abs(r));
    }
    if (err.empty()) return 0.0;
    if (o.norm == ErrorNorm::Max) return worst;
    return std::sqrt(sum / static_cast<double>(err.size()));
}

struct Workspace {
    explicit Workspace(std::size_t n)
        : k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n),
          dense(n) {}
    std::vector<double> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, err, dense;
};

double initial_step(const Rhs& rhs, double t0, std::span<const double> y0,
                    std::span<const double> f0, double direction_span, const Options& o,
                    Workspace& w, Stats& stats) {
    const std::size_t n = y0.size();
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sk = o.atol + o.rtol * std::abs(y0[i]);
        dnf += (f0[i] / sk) * (f0[i] / sk);
        dny += (y0[i] / sk) * (y0[i] / sk);
    }
    dnf /= static_cast<double>(std::max<std::size_t>(n, 1));
    dny /= static_cast<double>(std::max<std::size_t>(n, 1));
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min({h, o.max_step, direction_span});

    for (std::size_t i = 0; i < n; ++i) w.ytmp[i] = y0[i] + h * f0[i];
    rhs(t0 + h, w.ytmp, w.k2);
    ++stats.rhs_evaluations;
    double der2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sk = o.atol + o.rtol * std::abs(y0[i]);
        const double d = (w.k2[i] - f0[i]) / sk;
        der2 += d * d;
    }
    der2 = std::sqrt(der2 / static_cast<double>(std::max<std::size_t>(n, 1))) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * h, h1, o.max_step, direction_span});
}

}  // namespace

Stats integrate(const Rhs& rhs, std::span<const double> y0, std::span<const double> grid,
                const Options& o, const Observer& observer) {
    if (grid.empty()) return {};
    if (!(o.rtol > 0.0) || !(o.atol > 0.0)) {
        throw DomainError("ODE tolerances must be positive");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] < grid[i - 1]) throw DomainError("output grid must be non-decreasing");
    }

    const std::size_t n = y0.size();
    Stats stats;
    Workspace w(n);
    std::vector<double> y(y0.begin(), y0.end());

    double t = grid.front();
    const double t_final = grid.back();
    std::size_t next_out = 0;
    while (next_out < grid.size() && grid[next_out] <= t) {
        observer(next_out, grid[next_out], y);
        ++next_out;
    }
    if (next_out == grid.size()) return stats;

    std::vector<double> stops;
    for (double b : o.breakpoints) {
        if (b > t && b < t_final) stops.push_back(b);
    }
    std::sort(stops.begin(), stops.end());
    stops.push_back(t_final);
    std::size_t next_stop = 0;

    rhs(t, y, w.k1);
    ++stats.rhs_evaluations;

    double h = o.initial_step > 0.0
                   ? std::min(o.initial_step, stops[0] - t)
                   : initial_step(rhs, t, y, w.k1, stops[0] - t, o, w, stats);
    double facold = 1e-4;
    bool rejected_last = false;
    std::size_t steps = 0;

    while (t < t_final) {
        while (next_stop < stops.size() && stops[next_stop] <= t) ++next_stop;
        const double stop = stops[std::min(next_stop, stops.size() - 1)];
        bool lands_on_stop = false;
        if (t + 1.01 * h >= stop) {
            h = stop - t;
            lands_on_stop = true;
        }
        if (++steps > o.max_steps) {
            throw IntegrationError("ODE integration exceeded the step budget", t);
        }
        if (0.1 * std::abs(h) <= std::abs(t) * kUround || h <= 0.0) {
            std::ostringstream msg;
            msg << "ODE step size underflow at t = " << t;
            throw IntegrationError(msg.str(), t);
        }

        auto& [k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, err, dense] = w;
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        const double t_new = lands_on_stop ? stop : t + h;
        rhs(t_new, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] +
                                  a76 * k6[i]);
        rhs(t_new, ynew, k7);
        stats.rhs_evaluations += 6;

        for (std::size_t i = 0; i < n; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);
        double error = error_norm(err, y, ynew, o);
        if (!std::isfinite(error)) error = 1e10;

        const double fac11 = std::pow(error, kExpo1);
        if (error <= 1.0) {
            double fac = fac11 / std::pow(facold, kBeta);
            fac = std::max(kMaxGrowth, std::min(kMaxShrink, fac / kSafety));
            double h_new = std::min(h / fac, o.max_step);
            if (rejected_last) h_new = std::min(h_new, h);
            facold = std::max(error, 1e-4);
            rejected_last = false;
            ++stats.accepted;

            if (next_out < grid.size() && grid[next_out] <= t_new) {
                // Dense output coefficients, reusing the stage buffers.
                std::vector<double>& r2 = ytmp;  // ynew - y
                std::vector<double>& r3 = k2;    // h k1 - r2
                std::vector<double>& r4 = err;   // r2 - h k7 - r3
                std::vector<double>& r5 = dense;
                for (std::size_t i = 0; i < n; ++i) {
                    r2[i] = ynew[i] - y[i];
                    r3[i] = h * k1[i] - r2[i];
                    r4[i] = r2[i] - h * k7[i] - r3[i];
                    r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                 d6 * k6[i] + d7 * k7[i]);
                }
                std::vector<double> sample(n);
                while (next_out < grid.size() && grid[next_out] <= t_new) {
                    const double tg = grid[next_out];
                    if (tg == t_new) {
                        observer(next_out, tg, ynew);
                    } else {
                        const double theta = (tg - t) / h;
                        const double theta1 = 1.0 - theta;
                        for (std::size_t i = 0; i < n; ++i) {
                            sample[i] = y[i] + theta * (r2[i] + theta1 * (r3[i] +
                                        theta * (r4[i] + theta1 * r5[i])));
                        }
                        observer(next_out, tg, sample);
                    }
                    ++next_out;
                }
            }

            std::swap(y, ynew);
            std::swap(k1, k7);
            t = t_new;
            h = h_new;
        } else {
            h = h / std::min(kMaxShrink, fac11 / kSafety);
            rejected_last = true;
            ++stats.rejected;
        }
    }
    return stats;
}

std::vector<std::vector<double>> integrate_dense(const Rhs& rhs, std::span<const double> y0,
                                                 std::span<const double> grid,
                                                 const Options& options) {
    std::vector<std::vector<double>> out(grid.size());
    integrate(rhs, y0, grid, options,
              [&](std::size_t i, double, std::span<const double> y) {
                  out[i].assign(y.begin(), y.end());
              });
    return out;
}

}  // namespace aqc::ode
