#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ssdp/demand.hpp"
#include "ssdp/error.hpp"

#include <cmath>
#include <vector>

using namespace ssdp;

namespace {

// Composite Simpson rule on [a, b].
template <class F>
double simpson(F f, double a, double b, int n = 2000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace

TEST_CASE("atoms are sorted, merged and renormalized") {
    auto d = DemandDistribution::from_atoms({{2, 0.25}, {0, 0.25}, {1, 0.25}, {1, 0.25}});
    REQUIRE(d.atoms().size() == 3);
    CHECK(d.atoms()[0].value == 0);
    CHECK(d.atoms()[1].value == 1);
    CHECK(d.atoms()[1].prob == 0.5);
    CHECK(d.mean() == 1.0);
    CHECK(d.max_value() == 2.0);
    CHECK(d.positive_mass() == 0.75);
    CHECK(d.on_lattice(1.0));
    CHECK_FALSE(d.on_lattice(2.0));
}

TEST_CASE("invalid atom tables are rejected") {
    CHECK_THROWS_AS(DemandDistribution::from_atoms({}), ConfigError);
    CHECK_THROWS_AS(DemandDistribution::from_atoms({{-1, 1.0}}), ConfigError);
    CHECK_THROWS_AS(DemandDistribution::from_atoms({{1, 0.0}, {2, 1.0}}), ConfigError);
    CHECK_THROWS_AS(DemandDistribution::from_atoms({{1, 0.5}, {2, 0.4}}), ConfigError);
}

TEST_CASE("point mass discretizes to a single atom") {
    auto d = discretize_demand(continuous::PointMass{0.0}, 16);
    REQUIRE(d.atoms().size() == 1);
    CHECK(d.atoms()[0].value == 0.0);
    CHECK(d.atoms()[0].prob == 1.0);
}

TEST_CASE("uniform on [0,2] with two atoms sits at the half midpoints") {
    auto d = discretize_demand(continuous::Uniform{0, 2}, 2);
    REQUIRE(d.atoms().size() == 2);
    CHECK(d.atoms()[0].value == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(d.atoms()[1].value == doctest::Approx(1.5).epsilon(1e-7));
    CHECK(d.atoms()[0].prob == doctest::Approx(0.5));
    CHECK(d.source() == DemandSource::discretized_continuous);
}

TEST_CASE("exponential atoms match bin conditional means by numerical integration") {
    const std::size_t n = 64;
    auto d = discretize_demand(continuous::Exponential{1.0}, n);
    REQUIRE(d.atoms().size() == n);
    const double mass = (1.0 - demand_tail_mass) / n;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = -std::log(1.0 - k * mass);
        const double b = -std::log(1.0 - (k + 1) * mass);
        const double num = simpson([](double x) { return x * std::exp(-x); }, a, b);
        const double den = simpson([](double x) { return std::exp(-x); }, a, b);
        CHECK(d.atoms()[k].value == doctest::Approx(num / den).epsilon(1e-6));
    }
    CHECK(std::abs(d.mean() - 1.0) < 1e-3);
    CHECK(std::abs(d.mean() - 1.0) < 1e-6);
}

TEST_CASE("gamma discretization preserves the mean") {
    auto d = discretize_demand(continuous::Gamma{2.0, 1.5}, 32);
    CHECK(std::abs(d.mean() - 3.0) / 3.0 < 1e-6);
}

TEST_CASE("normal demand and bad parameters are rejected") {
    CHECK_THROWS_AS(discretize_demand(continuous::Normal{5, 1}, 8), ConfigError);
    CHECK_THROWS_AS(discretize_demand(continuous::Uniform{-1, 1}, 8), ConfigError);
    CHECK_THROWS_AS(discretize_demand(continuous::Exponential{-1}, 8), ConfigError);
    CHECK_THROWS_AS(make_continuous_spec("weibull", {}), ConfigError);
    CHECK_THROWS_AS(make_continuous_spec("exponential", {}), ConfigError);
    CHECK(std::holds_alternative<continuous::Gamma>(make_continuous_spec("gamma", {{"shape", 2}, {"scale", 1}})));
}
