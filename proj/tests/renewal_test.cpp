#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "ssdp/error.hpp"
#include "ssdp/renewal.hpp"
#include "ssdp/rng.hpp"

#include <omp.h>

#include <cmath>
#include <cstring>

using namespace ssdp;

TEST_CASE("per-path streams depend only on seed and index") {
    PathRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x != c.uniform());
    CHECK(x != d.uniform());
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("inverse-CDF sampling reproduces the atom probabilities") {
    const auto d = fixtures::instance_a_demand();
    const DemandSampler draw(d);
    PathRng rng(1, 0);
    double counts[3] = {0, 0, 0};
    const int n = 200000;
    for (int i = 0; i < n; ++i)
        counts[static_cast<int>(draw(rng))] += 1;
    CHECK(counts[0] / n == doctest::Approx(0.25).epsilon(0.02));
    CHECK(counts[1] / n == doctest::Approx(0.5).epsilon(0.02));
    CHECK(counts[2] / n == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("unit demand renewal arithmetic is exact") {
    const auto d = fixtures::unit_demand();
    const auto s = sample_renewal(d, 2.0, 50, 9);
    for (const auto& p : s.paths) {
        CHECK(p.N == 2);
        CHECK(p.S_N == 2.0);
        CHECK(p.S_N_plus_1 == 3.0);
        CHECK(p.overshoot == 1.0);
    }
    const auto w = wald_check(s, d);
    CHECK(w.lhs == 3.0);
    CHECK(w.rhs == 3.0);
    CHECK(w.z == 0.0);
    CHECK(w.pass());

    const InventoryModel m(1, 1, fixtures::instance_a_h(), d, Grid(-10, 10, 1, true));
    const auto o = overshoot_bound_check(m, 0.0, 2.0, 50, 9);
    CHECK(o.lhs == m.h()(-3));
    CHECK(o.rhs == 3 * h_star(m, -3));
    CHECK(o.lhs_se == 0.0);
    CHECK(o.pass());
}

TEST_CASE("Wald identity and overshoot bound hold by Monte Carlo") {
    const auto m = fixtures::instance_a();
    const auto s = sample_renewal(m.demand(), 6.0, 100000, 2024);
    const auto w = wald_check(s, m.demand());
    CHECK(w.pass());
    CHECK(std::abs(w.z) <= 4.0);

    const InventoryModel neg(1, 1, PiecewiseLinear({{-1, 1}, {0, 0}, {1, 0.5}}), m.demand(), m.grid());
    const auto o = overshoot_bound_check(neg, 0.0, 0.0, 100000, 11);
    CHECK(o.pass());
    CHECK(o.lhs <= o.rhs + 3 * o.lhs_se);
}

TEST_CASE("samples are identical across runs and thread counts") {
    const auto d = fixtures::instance_a_demand();
    omp_set_num_threads(1);
    const auto a = sample_renewal(d, 5.0, 5000, 77, kernels::Exec::parallel);
    omp_set_num_threads(4);
    const auto b = sample_renewal(d, 5.0, 5000, 77, kernels::Exec::parallel);
    const auto c = sample_renewal(d, 5.0, 5000, 77, kernels::Exec::serial);
    REQUIRE(a.paths.size() == b.paths.size());
    for (std::size_t i = 0; i < a.paths.size(); ++i) {
        CHECK(a.paths[i].N == b.paths[i].N);
        CHECK(std::memcmp(&a.paths[i].S_N_plus_1, &b.paths[i].S_N_plus_1, sizeof(double)) == 0);
        CHECK(a.paths[i].N == c.paths[i].N);
    }
    CHECK(a.mean_N() == b.mean_N());
}

TEST_CASE("degenerate renewal process is rejected") {
    const auto d = DemandDistribution::from_atoms({{0, 1.0}});
    CHECK_THROWS_WITH_AS(sample_renewal(d, 1.0, 10, 1), doctest::Contains("degenerate"), ConfigError);
    CHECK_THROWS_AS(overshoot_bound_check(fixtures::instance_a(), 0.0, -1.0, 10, 1), ConfigError);
}
