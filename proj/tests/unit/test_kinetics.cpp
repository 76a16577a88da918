#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "aqc/errors.hpp"
#include "aqc/kinetics.hpp"
#include "rk4_reference.hpp"

using namespace aqc;

namespace {

SimParams constant_params(double delta, double gamma, double T, double t_end,
                          std::size_t points = 101) {
    return SimParams::make(GapSchedule::constant(delta, t_end), MassSchedule::constant(1.0),
                           BathSpec::ohmic(gamma, T), points);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-30); }

}  // namespace

TEST_CASE("ground and equilibrium occupation") {
    CHECK(ground_occupation(0.0) == 1.0);
    CHECK(ground_occupation(1.0) == 0.5);
    CHECK(ground_occupation(1.0 / (std::numbers::e - 1.0)) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
    CHECK(ground_occupation(0.581977) == doctest::Approx(0.632121).epsilon(1e-6));
    CHECK_THROWS_AS(ground_occupation(-1e-3), DomainError);

    CHECK(equilibrium_occupation(1.0, 1.0) == doctest::Approx(0.632121).epsilon(1e-6));
    CHECK(equilibrium_occupation(1.0, 0.0) == 1.0);
    CHECK(equilibrium_occupation(std::numbers::ln2, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("equilibrium identity over a log grid") {
    for (int i = 0; i <= 500; ++i) {
        const double x = 1e-3 * std::pow(3e4, i / 500.0);
        const double lhs = ground_occupation(thermal_occupation(x, 1.0));
        const double rhs = equilibrium_occupation(x, 1.0);
        CHECK(rel(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("constant coefficients: exact exponential approach") {
    // γ = 0.1, Δ = T = 1 on [0, 30].
    const auto p = constant_params(1.0, 0.1, 1.0, 30.0);
    const auto traj = solve_n_stepper(p);
    const double N = thermal_occupation(1.0, 1.0);
    REQUIRE(traj.rows.size() == 101);
    for (const auto& row : traj.rows) {
        const double exact = -N * std::expm1(-0.1 * row.t);
        if (row.t > 0.0) CHECK(rel(row.n, exact) <= 1e-8);
        CHECK(row.pg() == 1.0 / (1.0 + row.n));
        CHECK(std::abs(row.n - N) <= N * std::exp(-0.1 * row.t) * (1 + 1e-8));
    }

    SUBCASE("gamma t = 1") {
        auto q = constant_params(1.0, 1.0, 1.0, 1.0, 2);
        const double n = solve_n_stepper(q).final().n;
        // N(1 − e^{−1}) = e^{−1} exactly for Δ/T = 1.
        CHECK(n == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
        CHECK(n == doctest::Approx(0.367879).epsilon(1e-6));
    }
    SUBCASE("quadrature at gamma t = 2") {
        auto q = constant_params(1.0, 1.0, 1.0, 2.0, 2);
        const double n = solve_n_quadrature(q, 2.0);
        CHECK(rel(n, -N * std::expm1(-2.0)) <= 1e-12);
        CHECK(n == doctest::Approx(0.503215).epsilon(1e-6));
    }
}

TEST_CASE("zero temperature keeps the oscillator in its ground state") {
    const auto p = SimParams::landau_zener(1.0, 0.01, 10.0, 0.02, 0.0, 200);
    const auto traj = solve_n_stepper(p);
    for (const auto& row : traj.rows) {
        CHECK(row.n == 0.0);
        CHECK(row.pg() == 1.0);
    }
    CHECK(solve_n_quadrature(p, 20.0) == 0.0);
}

TEST_CASE("Example I regime: stepper, quadrature and RK4 agree") {
    const auto p = SimParams::landau_zener(1.0, 0.01, 10.0, 0.02, 1.0);
    const double stepper = solve_n_stepper(p).final().n;
    const double quad = solve_n_quadrature(p, 20.0);
    CHECK(rel(stepper, quad) <= 1e-6);
    const double rk4 = testing::rk4_relaxation(p, 20.0, 1'000'000);
    CHECK(rel(stepper, rk4) <= 1e-5);
}

TEST_CASE("stepper vs quadrature on the 27-point regime grid") {
    for (double gt : {0.1, 1.0, 5.0}) {
        for (double T : {0.1, 1.0, 10.0}) {
            for (double eps : {0.3, 0.05, 0.01}) {
                const double tau = 10.0;
                auto p = SimParams::landau_zener(1.0, eps, tau, gt / tau, T, 3);
                p.output_grid = {tau / 2, tau, 2 * tau};
                const auto traj = solve_n_stepper(p);
                for (const auto& row : traj.rows) {
                    const double q = solve_n_quadrature(p, row.t);
                    INFO("gt=" << gt << " T=" << T << " eps=" << eps << " t=" << row.t);
                    CHECK(std::abs(row.n - q) / std::max(row.n, 1e-30) <= 1e-6);
                }
            }
        }
    }
}

TEST_CASE("trajectory invariants: bounds and monotone relaxation") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double eps = 0.01 + 0.5 * u01(rng);
        const double gamma = 0.01 + 0.5 * u01(rng);
        const double T = 0.05 + 3.0 * u01(rng);
        const auto p = SimParams::landau_zener(1.0, eps, 5.0, gamma, T, 400);
        const auto traj = solve_n_stepper(p);
        const double n_cap = thermal_occupation(eps, T);
        for (std::size_t i = 0; i < traj.rows.size(); ++i) {
            const auto& row = traj.rows[i];
            CHECK(row.n >= 0.0);
            CHECK(row.n <= n_cap * (1 + 1e-9));
            CHECK(row.pg() > 0.0);
            CHECK(row.pg() <= 1.0);
            if (i > 0 && i + 1 < traj.rows.size()) {
                const double slope = -row.gamma * (row.n - row.N);
                const double diff = traj.rows[i + 1].n - traj.rows[i - 1].n;
                // Only meaningful away from the turning point n = N.
                if (std::abs(row.n - row.N) > 1e-3 * std::max(row.N, 1e-12) &&
                    std::abs(slope) * (traj.rows[i + 1].t - traj.rows[i - 1].t) > 1e-9) {
                    CHECK((slope > 0) == (diff > 0));
                }
            }
        }
    }
}

TEST_CASE("non-ohmic bath and time-dependent mass use the nested quadrature") {
    SimParams p = SimParams::make(GapSchedule::landau_zener(1.0, 0.1, 4.0),
                                  MassSchedule::tabulated({{0.0, 1.0}, {8.0, 2.0}}),
                                  BathSpec::power_law(0.05, 2.0, std::numeric_limits<double>::infinity(), 0.7),
                                  9);
    const auto traj = solve_n_stepper(p);
    for (const auto& row : traj.rows) {
        if (row.t == 0.0) continue;
        CHECK(rel(row.n, solve_n_quadrature(p, row.t)) <= 1e-6);
        CHECK(rel(row.n, testing::rk4_relaxation(p, row.t, 200'000)) <= 1e-7);
    }
}

TEST_CASE("high-temperature occupation model") {
    auto p = SimParams::landau_zener(1.0, 0.1, 5.0, 0.1, 2.0, 5);
    p.occupation = OccupationModel::HighTemperature;
    CHECK(p.target(5.0) == doctest::Approx(20.0));
    const auto traj = solve_n_stepper(p);
    CHECK(rel(traj.final().n, solve_n_quadrature(p, 10.0)) <= 1e-6);
}

TEST_CASE("parameter validation") {
    auto p = SimParams::landau_zener(1.0, 0.1, 5.0, 0.1, 1.0, 5);
    p.output_grid = {0.0, 2.0, 1.0};
    CHECK_THROWS_AS(solve_n_stepper(p), DomainError);
    p.output_grid = {0.0, 11.0};
    CHECK_THROWS_AS(solve_n_stepper(p), DomainError);
    p.output_grid = {1.0};
    p.rtol = 0.0;
    CHECK_THROWS_AS(solve_n_stepper(p), DomainError);
    CHECK_THROWS_AS(SimParams::landau_zener(1.0, 0.1, 5.0, 0.1, -1.0), DomainError);
}

TEST_CASE("grid not starting at zero still integrates from n(0) = 0") {
    auto p = SimParams::landau_zener(1.0, 0.1, 5.0, 0.1, 1.0, 5);
    auto full = solve_n_stepper(p);
    p.output_grid = {5.0, 10.0};
    const auto part = solve_n_stepper(p);
    REQUIRE(part.rows.size() == 2);
    CHECK(rel(part.rows[1].n, full.final().n) <= 1e-9);
}

TEST_CASE("trajectory CSV and JSON summary") {
    const auto p = SimParams::landau_zener(1.0, 0.1, 5.0, 0.1, 1.0, 3);
    const auto traj = solve_n_stepper(p);
    std::ostringstream out;
    write_trajectory_csv(out, traj);
    const std::string text = out.str();
    CHECK(text.rfind("t,delta,gamma,N,n,pg\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    const auto json = trajectory_summary_json(traj, p);
    CHECK(json.find("\"final_pg\"") != std::string::npos);
    CHECK(json.find("\"params\"") != std::string::npos);
}
