#include "aqc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "aqc/errors.hpp"

namespace aqc::quad {

namespace {

// Kronrod abscissae (positive half, descending) and weights; every second
// abscissa from index 1 is a 10-point Gauss node. Values from QUADPACK qk21.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

struct Interval {
    double a, b;
    Result r;
    bool operator<(const Interval& other) const { return r.error < other.r.error; }
};

}  // namespace

Result gauss_kronrod21(const Integrand& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    const double fc = f(centre);
    double resk = kWgk[10] * fc;
    double resg = 0.0;
    double resabs = std::abs(resk);
    std::array<double, 10> fv1{}, fv2{};
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - reskh);
    for (std::size_t j = 0; j < 10; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }

    Result out;
    out.value = resk * half;
    resabs *= abs_half;
    resasc *= abs_half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEpsilon)) {
        err = std::max(50.0 * kEpsilon * resabs, err);
    }
    out.error = err;
    out.intervals = 1;
    out.evaluations = 21;
    return out;
}

Result integrate(const Integrand& f, double a, double b, const Options& options) {
    if (a == b) return {};
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate: limits must be finite; use integrate_to_infinity");
    }
    const double sign = b > a ? 1.0 : -1.0;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);

    std::vector<double> cuts{lo};
    for (double p : options.breakpoints) {
        if (p > lo && p < hi) cuts.push_back(p);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(hi);

    std::priority_queue<Interval> heap;
    double total = 0.0;
    double total_err = 0.0;
    std::size_t evaluations = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Interval iv{cuts[i], cuts[i + 1], gauss_kronrod21(f, cuts[i], cuts[i + 1])};
        total += iv.r.value;
        total_err += iv.r.error;
        evaluations += iv.r.evaluations;
        heap.push(iv);
    }

    auto converged = [&] {
        return total_err <= std::max(options.epsabs, options.epsrel * std::abs(total));
    };

    while (!converged()) {
        if (heap.size() >= options.max_intervals) {
            std::ostringstream msg;
            msg << "adaptive quadrature did not converge on [" << lo << ", " << hi
                << "]: estimate " << total << " +/- " << total_err;
            throw QuadratureError(msg.str(), sign * total, total_err);
        }
        const Interval worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            std::ostringstream msg;
            msg << "adaptive quadrature cannot bisect further near " << worst.a
                << ": estimate " << total << " +/- " << total_err;
            throw QuadratureError(msg.str(), sign * total, total_err);
        }
        heap.pop();
        Interval left{worst.a, mid, gauss_kronrod21(f, worst.a, mid)};
        Interval right{mid, worst.b, gauss_kronrod21(f, mid, worst.b)};
        evaluations += 42;
        total += left.r.value + right.r.value - worst.r.value;
        total_err += left.r.error + right.r.error - worst.r.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from scratch to drop the drift of the running updates.
    Result out;
    out.intervals = heap.size();
    out.evaluations = evaluations;
    std::vector<Interval> parts;
    parts.reserve(heap.size());
    while (!heap.empty()) {
        parts.push_back(heap.top());
        heap.pop();
    }
    std::sort(parts.begin(), parts.end(),
              [](const Interval& x, const Interval& y) { return x.a < y.a; });
    for (const auto& p : parts) {
        out.value += p.r.value;
        out.error += p.r.error;
    }
    out.value *= sign;
    return out;
}

Result integrate_to_infinity(const Integrand& f, double a, const Options& options) {
    if (!std::isfinite(a)) throw DomainError("integrate_to_infinity: lower limit must be finite");
    auto mapped = [&](double u) {
        const double x = a + (1.0 - u) / u;
        return f(x) / (u * u);
    };
    Options o = options;
    o.breakpoints.clear();
    for (double p : options.breakpoints) {
        if (p > a) o.breakpoints.push_back(1.0 / (1.0 + (p - a)));
    }
    return integrate(mapped, 0.0, 1.0, o);
}

}  // namespace aqc::quad
