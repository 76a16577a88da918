#include <doctest.h>

#include <clocale>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "aqc/csv_io.hpp"
#include "aqc/errors.hpp"

using namespace aqc;

TEST_CASE("format_double matches printf %.17g") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> mant(-10.0, 10.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 500; ++i) {
        const double x = mant(rng) * std::pow(10.0, expo(rng) / 10.0);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        CHECK(io::format_double(x) == std::string(buf));
    }
    CHECK(io::format_double(0.0) == "0");
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        CHECK(io::parse_double(io::format_double(x)) == x);
    }
}

TEST_CASE("parse_double is strict") {
    CHECK(io::parse_double("1.5") == 1.5);
    CHECK(io::parse_double(" -2e-3 ") == -2e-3);
    CHECK_THROWS_AS(io::parse_double(""), InputError);
    CHECK_THROWS_AS(io::parse_double("1.5x"), InputError);
    CHECK_THROWS_AS(io::parse_double("nan"), InputError);
    CHECK_THROWS_AS(io::parse_double("inf"), InputError);
    CHECK_THROWS_AS(io::parse_double("1,5"), InputError);
}

TEST_CASE("read_csv handles headers, comments and blank lines") {
    std::istringstream in("# leading comment\nkT,pg\n\n0.1,0.79\n# mid\n0.5,0.53\n");
    const auto t = io::read_csv(in);
    REQUIRE(t.header.size() == 2);
    CHECK(t.header[0] == "kT");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[1][1] == "0.53");

    std::istringstream bare("1,2\n3,4\n");
    const auto b = io::read_csv(bare);
    CHECK(b.header.empty());
    CHECK(b.rows.size() == 2);

    std::istringstream ragged("a,b\n1,2\n3\n");
    CHECK_THROWS_AS(io::read_csv(ragged), InputError);
}

TEST_CASE("read_xy_csv") {
    std::istringstream in("\xEF\xBB\xBFtime,energy\r\n0,1\r\n1,0.5\r\n");
    const auto xy = io::read_xy_csv(in);
    REQUIRE(xy.size() == 2);
    CHECK(xy[1].x == 1.0);
    CHECK(xy[1].y == 0.5);
    CHECK_THROWS_AS(io::read_xy_csv_file("/nonexistent/file.csv"), InputError);
}
