#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ssdp/error.hpp"
#include "ssdp/grid.hpp"

using ssdp::Grid;

TEST_CASE("lattice points and sizes") {
    Grid g(-20, 20, 1, true);
    CHECK(g.size() == 41);
    CHECK(g.at(0) == -20);
    CHECK(g.at(40) == 20);
    CHECK(g.index_of(0.0) == 20u);
    CHECK_FALSE(g.index_of(0.5).has_value());
    CHECK_FALSE(g.index_of(21).has_value());

    Grid q(-5, 5, 0.25);
    CHECK(q.size() == 41);
    CHECK(q.index_of(0.0) == 20u);
}

TEST_CASE("invalid grids are rejected") {
    CHECK_THROWS_AS(Grid(1, 1, 1), ssdp::ConfigError);
    CHECK_THROWS_AS(Grid(0, 1, 0), ssdp::ConfigError);
    CHECK_THROWS_AS(Grid(0, 1, 0.3), ssdp::ConfigError);
    CHECK_THROWS_AS(Grid(0, 2, 0.5, true), ssdp::ConfigError);
    CHECK_THROWS_AS(Grid(0.5, 2.5, 1, true), ssdp::ConfigError);
}

TEST_CASE("locate brackets off-lattice levels and flags clamping") {
    Grid g(0, 4, 1);
    auto b = g.locate(2.25);
    CHECK(b.lo == 2);
    CHECK(b.weight_hi == doctest::Approx(0.25));
    CHECK_FALSE(b.clamped);

    b = g.locate(3.0);
    CHECK(b.lo == 3);
    CHECK(b.weight_hi == 0.0);

    b = g.locate(-1.5);
    CHECK(b.lo == 0);
    CHECK(b.clamped);

    b = g.locate(7);
    CHECK(b.lo == 4);
    CHECK(b.clamped);
}

TEST_CASE("shifted grid keeps step and size") {
    Grid g(-2, 2, 0.5);
    Grid s = g.shifted(1);
    CHECK(s.x_lo() == -1);
    CHECK(s.x_hi() == 3);
    CHECK(s.size() == g.size());
    CHECK(Grid(-2, 2, 0.5) == g);
}
