#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "aqc/bath.hpp"
#include "aqc/errors.hpp"

using namespace aqc;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// 1/(e^x − 1) in 50-digit arithmetic.
double occupation_reference(double x) {
    using boost::multiprecision::cpp_bin_float_50;
    const cpp_bin_float_50 X = x;
    return static_cast<double>(1 / (exp(X) - 1));
}
}  // namespace

TEST_CASE("spectral densities") {
    const auto ohmic = BathSpec::ohmic(0.1, 1.0);
    CHECK(spectral_density(ohmic, 2.0) == doctest::Approx(0.2 / std::numbers::pi));
    CHECK(spectral_density(ohmic, 2.0) == doctest::Approx(0.063662).epsilon(1e-5));

    const auto cubic = BathSpec::power_law(1.0, 3.0, 5.0, 1.0);
    CHECK(spectral_density(cubic, 2.0) == 8.0);
    CHECK(spectral_density(cubic, 6.0) == 0.0);

    CHECK_THROWS_AS(spectral_density(ohmic, 0.0), DomainError);
    CHECK_THROWS_AS(spectral_density(ohmic, -1.0), DomainError);
}

TEST_CASE("tabulated spectral density") {
    const auto tab = BathSpec::tabulated({{1.0, 0.5}, {3.0, 1.5}}, 0.5);
    CHECK(spectral_density(tab, 2.0) == doctest::Approx(1.0));
    CHECK(spectral_density(tab, 0.5) == 0.0);
    CHECK(spectral_density(tab, 3.5) == 0.0);

    std::istringstream csv("omega,J\n1,0.5\n3,1.5\n");
    const auto from_csv = BathSpec::from_csv(csv, 0.5);
    CHECK(spectral_density(from_csv, 2.5) == doctest::Approx(1.25));

    CHECK_THROWS_AS(BathSpec::tabulated({{1.0, -0.5}}, 0.5), DomainError);
}

TEST_CASE("friction") {
    CHECK(friction(BathSpec::ohmic(0.1, 1.0), 0.37) == 0.1);
    CHECK(friction(BathSpec::power_law(1.0, 3.0, kInf, 1.0), 2.0) ==
          doctest::Approx(4.0 * std::numbers::pi));
    CHECK(friction(BathSpec::tabulated({{1.0, 0.5}}, 1.0), 1.0) ==
          doctest::Approx(std::numbers::pi * 0.5));
    CHECK_THROWS_AS(friction(BathSpec::ohmic(0.1, 1.0), 0.0), DomainError);
}

TEST_CASE("ohmic friction is exactly gap independent") {
    const auto ohmic = BathSpec::ohmic(0.173, 2.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logd(-8.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        CHECK(friction(ohmic, std::exp(logd(rng))) == 0.173);
    }
}

TEST_CASE("relaxation rate") {
    const auto any = GapSchedule::landau_zener(1.0, 0.2, 3.0);
    CHECK(relaxation_rate(BathSpec::ohmic(0.2, 1.0), MassSchedule::constant(2.0), any, 1.3) ==
          doctest::Approx(0.1));

    const auto lz = GapSchedule::landau_zener(1.0, 0.5, 1.0);
    CHECK(relaxation_rate(BathSpec::power_law(1.0, 3.0, kInf, 1.0), MassSchedule::constant(1.0),
                          lz, 1.0) == doctest::Approx(std::numbers::pi * 0.25));
    CHECK(relaxation_rate(BathSpec::power_law(1.0, 3.0, kInf, 1.0), MassSchedule::constant(1.0),
                          lz, 1.0) == doctest::Approx(0.7854).epsilon(1e-4));

    const auto m = MassSchedule::tabulated({{0.0, 1.0}, {1.0, 2.0}});
    CHECK(relaxation_rate(BathSpec::ohmic(0.1, 1.0), m, lz, 1.0) == doctest::Approx(0.05));
}

TEST_CASE("relaxation rate composes friction and mass pointwise") {
    const auto bath = BathSpec::power_law(0.3, 2.0, kInf, 1.0);
    const auto mass = MassSchedule::tabulated({{0.0, 1.0}, {2.0, 3.0}});
    const auto lz = GapSchedule::landau_zener(1.0, 0.1, 1.0);
    for (int i = 0; i <= 40; ++i) {
        const double t = 2.0 * i / 40.0;
        CHECK(relaxation_rate(bath, mass, lz, t) == friction(bath, gap_at(lz, t)) / mass.at(t));
    }
}

TEST_CASE("thermal occupation") {
    CHECK(thermal_occupation(1.0, 1.0) == doctest::Approx(1.0 / (std::numbers::e - 1.0)).epsilon(1e-15));
    CHECK(thermal_occupation(1.0, 1.0) == doctest::Approx(0.581977).epsilon(1e-6));
    CHECK(thermal_occupation(50.0, 1.0) == doctest::Approx(1.92875e-22).epsilon(1e-5));
    CHECK(thermal_occupation(50.0, 1.0) == doctest::Approx(occupation_reference(50.0)).epsilon(1e-14));
    CHECK(thermal_occupation(1.0, 0.0) == 0.0);
    CHECK(thermal_occupation(800.0, 1.0) == 0.0);
    CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(thermal_occupation(1.0, -1.0), DomainError);

    SUBCASE("high-temperature regime") {
        const double ref = occupation_reference(0.01);
        CHECK(thermal_occupation(0.01, 1.0) == doctest::Approx(ref).epsilon(1e-14));
        CHECK(ref == doctest::Approx(99.500833).epsilon(1e-8));
        CHECK(ref == doctest::Approx(1.0 / 0.01 - 0.5).epsilon(1e-5));
    }
}

TEST_CASE("thermal occupation identities over a log grid") {
    double previous = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 400; ++i) {
        const double x = 1e-3 * std::pow(3e4, i / 400.0);  // [1e-3, 30]
        const double N = thermal_occupation(x, 1.0);
        CHECK(N < previous);
        previous = N;
        CHECK((N + 1.0) == doctest::Approx(std::exp(x) * N).epsilon(1e-12));
        CHECK(N == doctest::Approx(occupation_reference(x)).epsilon(1e-14));
    }
}
