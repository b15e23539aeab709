#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "ssdp/average_policy.hpp"
#include "ssdp/avg_cost.hpp"
#include "ssdp/dp.hpp"
#include "ssdp/error.hpp"

#include <algorithm>
#include <cmath>

using namespace ssdp;

namespace {

const Mdp& instance_a() {
    static const Mdp mdp(fixtures::instance_a());
    return mdp;
}

const VanishingDiscountSweep& instance_a_sweep() {
    static const auto sw = sweep(instance_a(), geometric_schedule(12));
    return sw;
}

const Mdp& zero_demand() {
    static const Mdp mdp(fixtures::zero_demand());
    return mdp;
}

const VanishingDiscountSweep& zero_demand_sweep() {
    static const auto sw = sweep(zero_demand(), geometric_schedule(12));
    return sw;
}

} // namespace

TEST_CASE("schedules") {
    const auto s = geometric_schedule(3);
    CHECK(s == std::vector<double>{0.5, 0.75, 0.875});
    CHECK(parse_schedule("geometric:3") == s);
    CHECK(parse_schedule("0.5, 0.9,0.99") == std::vector<double>{0.5, 0.9, 0.99});
    CHECK_THROWS_AS(parse_schedule("geometric:x"), ConfigError);
    CHECK_THROWS_AS(parse_schedule("0.5,abc"), ConfigError);
    CHECK_THROWS_AS(parse_schedule(""), ConfigError);
    const std::vector<double> bad = {0.9, 0.5};
    CHECK_THROWS_AS(sweep(instance_a(), bad), ConfigError);
    const std::vector<double> one = {1.0};
    CHECK_THROWS_AS(sweep(instance_a(), one), ConfigError);
}

TEST_CASE("vanishing discount on Instance A") {
    const auto& sw = instance_a_sweep();
    REQUIRE(sw.records.size() == 12);
    CHECK_FALSE(sw.partial);
    CHECK(sw.cauchy);
    const std::size_t k = sw.differences.size();
    CHECK(std::abs(sw.differences[k - 1]) < 0.01 * sw.w_estimate);
    CHECK(std::abs(sw.differences[k - 2]) < 0.01 * sw.w_estimate);
    CHECK(sw.w_estimate <= 5.5);
    CHECK(sw.w_estimate == doctest::Approx(2.899).epsilon(1e-3));
    for (std::size_t i = 1; i < sw.records.size(); ++i)
        CHECK(sw.records[i].one_minus_alpha_m >= sw.records[i - 1].one_minus_alpha_m);
    REQUIRE(sw.records.back().sS.has_value());
    CHECK(sw.records.back().sS->s == 1.0);
    CHECK(sw.records.back().sS->S == 2.0);
    CHECK(minimizer_set_diagnostic(sw).ok());
    CHECK(assumption_B_diagnostic(sw).bounded);
}

TEST_CASE("relative value and optimality inequality") {
    const auto& mdp = instance_a();
    const auto& sw = instance_a_sweep();
    const auto rel = relative_value(sw);
    CHECK(*std::min_element(rel.u.values.begin(), rel.u.values.end()) == 0.0);
    CHECK(rel.w == sw.w_estimate);

    const auto avg = average_sS(mdp, geometric_schedule(12));
    CHECK(avg.settled);
    CHECK(avg.bounded);
    REQUIRE(avg.optimality.has_value());
    CHECK(avg.optimality->pass());
    CHECK(avg.optimality->max_interior <= avg.optimality->slack);

    std::vector<std::size_t> never(mdp.size());
    for (std::size_t i = 0; i < never.size(); ++i)
        never[i] = i;
    const auto oc = check_optimality_inequality(mdp, never, rel, default_slack(sw));
    CHECK_FALSE(oc.pass());
    for (std::size_t i = 0; i < mdp.size(); ++i)
        if (oc.interior[i] && mdp.grid().at(i) <= -5)
            CHECK(oc.residual[i] > oc.slack);
}

TEST_CASE("discount actions settle at x = 0") {
    const auto& sw = instance_a_sweep();
    const auto rel = relative_value(sw);
    const auto tr = track_discount_actions(instance_a(), sw, *instance_a().grid().index_of(0), rel, default_slack(sw));
    CHECK(tr.settled);
    CHECK(tr.settled_action == 2.0);
    CHECK(tr.membership_ok);
}

TEST_CASE("zero demand: (0,0) policy, exact values, thresholds and unbounded u") {
    const auto& mdp = zero_demand();
    const auto avg = average_sS(mdp, geometric_schedule(12));
    CHECK(avg.degenerate);
    CHECK(avg.policy.s == 0.0);
    CHECK(avg.policy.S == 0.0);

    const auto& sw = zero_demand_sweep();
    REQUIRE(sw.records.size() == 12);
    for (const auto& rec : sw.records) {
        for (std::size_t i = 0; i < mdp.size(); ++i) {
            const double x = mdp.grid().at(i);
            if (x >= 0)
                CHECK(std::abs(rec.solve.value[i] - mdp.model.h()(x) / (1 - rec.alpha)) <= default_sweep_tol);
        }
    }
    double prev_s = -1e9;
    for (const auto& rec : sw.records) {
        REQUIRE(rec.sS.has_value());
        CHECK(rec.sS->S == 0.0);
        CHECK(rec.sS->s <= 0.0);
        CHECK(rec.sS->s >= prev_s);
        prev_s = rec.sS->s;
    }
    CHECK(sw.records.back().sS->s == 0.0);
    CHECK_FALSE(assumption_B_diagnostic(sw).bounded);
}

TEST_CASE("short schedules are flagged") {
    const std::vector<double> one = {0.9};
    const auto sw = sweep(instance_a(), one);
    CHECK_FALSE(sw.cauchy);
    CHECK(std::any_of(sw.warnings.begin(), sw.warnings.end(),
                      [](const std::string& w) { return w.find("insufficient") != std::string::npos; }));
    CHECK_THROWS_AS(assumption_B_diagnostic(sw), ConfigError);
}
