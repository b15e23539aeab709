#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "ssdp/error.hpp"
#include "ssdp/model.hpp"

#include <cmath>

using namespace ssdp;

TEST_CASE("one-step costs on Instance A") {
    const auto m = fixtures::instance_a();
    const CostTable c(m);
    const auto& g = m.grid();
    const std::size_t x0 = *g.index_of(0);
    // 0.25 h(0) + 0.5 h(-1) + 0.25 h(-2) = 0 + 1.5 + 1.5
    CHECK(c(x0, x0) == 3.0);
    // K + c_bar + E h(1 - D) = 2 + 1 + (0.25 + 0 + 0.75)
    CHECK(c(x0, x0 + 1) == 4.0);
    CHECK(c(x0, x0 + 2) == 2 + 2 + 0.25 * 2 + 0.5 * 1 + 0);
    CHECK(expected_holding(m, 0.0) == 3.0);
}

TEST_CASE("costs use h beyond the grid edge") {
    const auto m = fixtures::instance_a();
    const CostTable c(m);
    // y = -20: E h(-20 - D) = 3 * 21
    CHECK(c(0, 0) == doctest::Approx(63.0));
}

TEST_CASE("zero-cost stub has zero costs") {
    const auto m = fixtures::zero_cost_stub();
    const CostTable c(m);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i; j < c.size(); ++j)
            CHECK(c(i, j) == 0.0);
}

TEST_CASE("cost is monotone in K") {
    const auto m = fixtures::instance_a();
    const CostTable a(m), b(m.with_K(5.0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(b(i, i) == a(i, i));
        for (std::size_t j = i + 1; j < a.size(); ++j)
            CHECK(b(i, j) - a(i, j) == doctest::Approx(3.0));
    }
}

TEST_CASE("kernel rows are stochastic and clamps are counted") {
    const auto m = fixtures::instance_a();
    const Kernel k(m);
    for (std::size_t j = 0; j < k.size(); ++j)
        CHECK(std::abs(k.row_sum(j) - 1.0) <= 1e-12);
    // y = -20 loses atoms 1 and 2, y = -19 loses atom 2
    CHECK(k.clamp_events() == 3);
    CHECK(k.row_clamps(0));
    CHECK(k.row_clamps(1));
    CHECK_FALSE(k.row_clamps(2));
}

TEST_CASE("off-lattice demand splits mass between neighbours") {
    const InventoryModel m(1, 1, fixtures::instance_a_h(), DemandDistribution::from_atoms({{0.25, 1.0}}),
                           Grid(-5, 5, 1));
    const Kernel k(m);
    const auto row = k.row(5); // y = 0, next state -0.25
    REQUIRE(row.size() == 2);
    CHECK(row[0].target == 4);
    CHECK(row[0].prob == doctest::Approx(0.25));
    CHECK(row[1].target == 5);
    CHECK(row[1].prob == doctest::Approx(0.75));
}

TEST_CASE("h is recentred at its leftmost minimizer") {
    const InventoryModel m(1, 1, PiecewiseLinear({{1, 5}, {2, 2}, {3, 3}}), fixtures::instance_a_demand(),
                           Grid(-10, 10, 1, true));
    CHECK(m.x_shift() == 2);
    CHECK(m.h_offset() == 2);
    CHECK(m.h()(0) == 0);
    CHECK(m.h().min_value() == 0);
    CHECK(m.grid().x_lo() == -12);
    CHECK(m.grid().x_hi() == 8);
    CHECK(m.h_coercive());
}

TEST_CASE("invalid models are rejected") {
    const auto d = fixtures::instance_a_demand();
    const Grid g(-5, 5, 1, true);
    CHECK_THROWS_AS(InventoryModel(-1, 1, fixtures::instance_a_h(), d, g), ConfigError);
    CHECK_THROWS_AS(InventoryModel(1, -1, fixtures::instance_a_h(), d, g), ConfigError);
    CHECK_THROWS_AS(InventoryModel(1, 1, PiecewiseLinear({{-1, 0}, {0, 1}, {1, 0}}), d, g), ConfigError);
    CHECK_THROWS_AS(InventoryModel(1, 1, PiecewiseLinear({{0, 0}, {1, 1}}), d, g), ConfigError);
    CHECK_THROWS_AS(InventoryModel(1, 1, PiecewiseLinear({{0, 1}, {0.5, 0}, {1, 1}}), d, g), ConfigError);
}

TEST_CASE("convexity on the grid") {
    CHECK(h_convex_on_grid(fixtures::instance_a_h(), Grid(-5, 5, 1)));
    CHECK_FALSE(h_convex_on_grid(PiecewiseLinear({{-1, 0}, {0, 1}, {1, 0}}), Grid(-5, 5, 1)));
}
