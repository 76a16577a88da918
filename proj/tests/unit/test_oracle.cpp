#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aqc/errors.hpp"
#include "aqc/oracle.hpp"
#include "fock_bruteforce.hpp"

using namespace aqc;

TEST_CASE("Gaussian overlap of simple states") {
    CHECK(gaussian_overlap(GaussianState::vacuum()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gaussian_overlap(GaussianState::thermal(1.0)) == doctest::Approx(0.5).epsilon(1e-15));
    for (double n : {0.0, 0.1, 1.0, 10.0}) {
        CHECK(std::abs(gaussian_overlap(GaussianState::thermal(n)) - 1.0 / (1.0 + n)) <= 1e-12);
    }
}

TEST_CASE("squeezed vacuum against a Fock-basis construction") {
    const double r = 0.5;
    const auto psi = testing::squeezed_vacuum_fock(r, 60);
    const auto m = testing::quadrature_moments(psi);
    REQUIRE(m.norm == doctest::Approx(1.0).epsilon(1e-12));
    const double direct = psi[0] * psi[0];

    const auto s = GaussianState::squeezed_vacuum(r);
    CHECK(std::abs(gaussian_overlap(s) - direct) <= 1e-6);
    CHECK(gaussian_overlap(s) == doctest::Approx(1.0 / std::cosh(r)).epsilon(1e-14));
    CHECK(gaussian_overlap(s) == doctest::Approx(0.886819).epsilon(1e-6));

    // The generator squeezes X, the factory anti-squeezes it; the
    // overlap and excitation do not depend on the orientation.
    const GaussianState from_fock{m.xx, m.pp, 0.0};
    CHECK(std::abs(gaussian_overlap(from_fock) - direct) <= 1e-10);
    CHECK(from_fock.sigma_pp == doctest::Approx(s.sigma_xx).epsilon(1e-10));
    CHECK(from_fock.sigma_xx == doctest::Approx(s.sigma_pp).epsilon(1e-10));

    CHECK(mean_excitation(s) == doctest::Approx(std::pow(std::sinh(r), 2)).epsilon(1e-14));
    CHECK(mean_excitation(s) == doctest::Approx(0.271540).epsilon(1e-6));

    const auto a2 = squeezing_moment(s);
    CHECK(a2.real() == doctest::Approx(std::sinh(2 * r) / 2).epsilon(1e-14));
    CHECK(a2.real() == doctest::Approx(0.587601).epsilon(1e-6));
    CHECK(a2.imag() == 0.0);
    CHECK(std::abs(squeezing_moment(from_fock)) == doctest::Approx(std::abs(a2)).epsilon(1e-10));
}

TEST_CASE("Gaussian moments") {
    CHECK(mean_excitation(GaussianState::vacuum()) == 0.0);
    CHECK(mean_excitation(GaussianState::thermal(2.0)) == 2.0);
    CHECK(squeezing_moment(GaussianState::thermal(3.0)) == std::complex<double>(0.0, 0.0));
    // diag(½, ½) with σ_XP = 0.1 violates det ≥ ¼, so inflate the variances.
    const GaussianState tilted{0.6, 0.6, 0.1};
    CHECK(squeezing_moment(tilted) == std::complex<double>(0.0, 0.1));
    CHECK_THROWS_AS(gaussian_overlap(GaussianState{0.5, 0.5, 0.1}), DomainError);
    CHECK_THROWS_AS(gaussian_overlap(GaussianState{0.2, 0.2, 0.0}), DomainError);
    CHECK_THROWS_AS(mean_excitation(GaussianState{-1.0, 2.0, 0.0}), DomainError);
}

TEST_CASE("Gaussian overlap never exceeds one") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        // Σ = Sᵀ·diag(ν, ν)·S with symplectic S: a valid thermal-squeezed state.
        const double nu = 0.5 + 3.0 * u(rng);
        const double r = 2.0 * u(rng) - 1.0;
        const double th = std::numbers::pi * u(rng);
        const double c = std::cos(th), s = std::sin(th);
        const double ex = std::exp(2 * r), emx = std::exp(-2 * r);
        const GaussianState g{nu * (c * c * ex + s * s * emx), nu * (s * s * ex + c * c * emx),
                              nu * c * s * (ex - emx)};
        const double ov = gaussian_overlap(g);
        CHECK(ov <= 1.0 + 1e-14);
        if (nu > 0.5 + 1e-3 || std::abs(r) > 1e-3) CHECK(ov < 1.0);
    }
}

TEST_CASE("classical trajectory: undamped motion") {
    const auto mass = MassSchedule::constant(1.0);
    const auto bath = BathSpec::ohmic(0.0, 0.0);
    const double T = 2.0 * std::numbers::pi;
    const auto gap = GapSchedule::constant(1.0, 10.0 * T);
    ode::Options opts;
    opts.rtol = 1e-12;
    opts.atol = 1e-14;
    std::vector<double> grid;
    for (int i = 0; i <= 1000; ++i) grid.push_back(10.0 * T * i / 1000.0);
    const auto traj = classical_trajectory(mass, bath, gap, 1.0, 0.0, grid, opts);
    CHECK(std::abs(traj[100].x - 1.0) <= 1e-8);
    const double e0 = classical_energy(mass, gap, traj.front());
    double worst = 0.0;
    for (const auto& s : traj) {
        worst = std::max(worst, std::abs(classical_energy(mass, gap, s) - e0) / e0);
        CHECK(std::abs(s.x - std::cos(s.t)) <= 1e-8);
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("classical trajectory: underdamped closed form") {
    const double g = 0.2;
    const double w = std::sqrt(1.0 - g * g / 4.0);
    CHECK(w == doctest::Approx(0.994987).epsilon(1e-6));
    const auto mass = MassSchedule::constant(1.0);
    const auto bath = BathSpec::ohmic(g, 0.0);
    const auto gap = GapSchedule::constant(1.0, 60.0);
    ode::Options opts;
    opts.rtol = 1e-12;
    opts.atol = 1e-14;
    const auto grid = uniform_grid(0.0, 60.0, 601);
    const auto traj = classical_trajectory(mass, bath, gap, 1.0, 0.0, grid, opts);
    for (const auto& s : traj) {
        const double env = std::exp(-g * s.t / 2);
        const double exact = env * (std::cos(w * s.t) + g / (2 * w) * std::sin(w * s.t));
        CHECK(std::abs(s.x - exact) <= 1e-6 * env);
        CHECK(std::abs(s.x) <= env * (1.0 + g / (2 * w)) + 1e-12);
    }
}

TEST_CASE("Fock density basics") {
    auto rho = FockDensity::vacuum(4);
    CHECK(rho.trace() == std::complex<double>(1.0, 0.0));
    CHECK(rho.mean_excitation() == 0.0);
    CHECK(rho.ground_population() == 1.0);
    rho(1, 1) = 0.5;
    rho(0, 0) = 0.5;
    rho(3, 1) = {0.1, 0.2};
    CHECK(rho.mean_excitation() == 0.5);
    CHECK(rho.squeezing_moment() == std::sqrt(6.0) * std::complex<double>(0.1, 0.2));
    CHECK(rho.hermiticity_defect() == doctest::Approx(std::abs(std::complex<double>(0.1, 0.2))));
    const auto back = FockDensity::from_real_vector(4, rho.to_real_vector());
    CHECK(back(3, 1) == rho(3, 1));
    CHECK_THROWS_AS(FockDensity(1), DomainError);
}

TEST_CASE("Lindblad evolution at zero temperature stays in the vacuum") {
    auto p = SimParams::landau_zener(1.0, 0.1, 5.0, 0.2, 0.0, 11);
    const auto states = lindblad_fock_evolve(p, 8);
    REQUIRE(states.size() == 11);
    for (const auto& rho : states) {
        CHECK(rho.ground_population() == 1.0);
        CHECK(rho.mean_excitation() == 0.0);
    }
    const auto report = run_fock_oracle(p);
    CHECK(report.max_abs_n_error <= 1e-12);
    CHECK(report.max_abs_pg_error <= 1e-12);
    CHECK(report.max_abs_squeezing <= 1e-12);
}

TEST_CASE("Lindblad evolution with constant coefficients") {
    auto p = SimParams::make(GapSchedule::constant(1.0, 1.0), MassSchedule::constant(1.0),
                             BathSpec::ohmic(1.0, 1.0), 11);
    const auto states = lindblad_fock_evolve(p, 60);
    const double n = states.back().mean_excitation();
    CHECK(std::abs(n - std::exp(-1.0)) <= 1e-6);
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& rho = states[i];
        const double ni = rho.mean_excitation();
        // Geometric populations: ρ_jj = ni^j/(1 + ni)^{j+1}.
        for (std::size_t j = 0; j < 6; ++j) {
            const double expected = std::pow(ni, double(j)) / std::pow(1.0 + ni, double(j + 1));
            CHECK(std::abs(rho(j, j).real() - expected) <= 1e-8);
        }
        CHECK(std::abs(rho.squeezing_moment()) < 1e-12);
        CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
    }
}

TEST_CASE("Fock oracle matches the kinetics solution on a Landau-Zener sweep") {
    auto p = SimParams::landau_zener(1.0, 0.3, 5.0, 0.1, 0.5, 21);
    const auto report = run_fock_oracle(p);
    CHECK(report.max_scaled_n_error <= 1e-3);
    CHECK(report.max_abs_pg_error <= 1e-3);
    CHECK(report.max_abs_squeezing < 1e-12);
    CHECK(report.max_trace_error < 1e-10);
    CHECK(report.max_hermiticity_error < 1e-10);
    CHECK(report.min_diagonal >= -1e-12);
    CHECK(report.max_top_population < kCutoffPopulationLimit);
    const auto json = oracle_report_json(report, p);
    CHECK(json.find("\"cutoff_used\"") != std::string::npos);
}

TEST_CASE("inadequate cutoff is reported with a suggestion") {
    auto p = SimParams::make(GapSchedule::constant(0.1, 50.0), MassSchedule::constant(1.0),
                             BathSpec::ohmic(0.5, 2.0), 5);
    try {
        lindblad_fock_evolve(p, 6);
        FAIL("expected CutoffError");
    } catch (const CutoffError& e) {
        CHECK(e.cutoff() == 6);
        CHECK(e.suggested_cutoff() == 12);
        CHECK(e.top_population() >= kCutoffPopulationLimit);
    }
    OracleOptions fixed;
    fixed.initial_cutoff = 6;
    fixed.auto_cutoff = false;
    CHECK_THROWS_AS(run_fock_oracle(p, fixed), CutoffError);
}
