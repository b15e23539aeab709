#pragma once

#include "ssdp/inventory_policy.hpp"
#include "ssdp/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ssdp::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;  // worst observed quantity
    double threshold = 0.0; // pass iff measured <= threshold (unless noted in detail)
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    bool skipped = false;
    std::vector<CheckResult> checks;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    bool pass() const noexcept;
};

inline constexpr std::size_t brute_force_max_states = 201;

struct BruteForceReport {
    SsPolicy extracted;
    std::size_t pairs = 0;
    double worst_gap = 0.0; // max over pairs and states of v_extracted - v_pair
    std::size_t worst_s_index = 0, worst_S_index = 0, worst_state = 0;
    bool slope_condition = false;
};

/// Evaluates every (s, S) pair on the grid (s <= S) and compares it with the
/// policy extracted by discounted_sS. Grids above brute_force_max_states are
/// rejected with ConfigError; a withheld policy raises VerificationError.
BruteForceReport brute_force_sS(const Mdp& mdp, double alpha, double tol = 1e-8);

/// v_t nondecreasing in t (F = 0), v_t <= v_{t,F} <= v_alpha + tol with
/// F = v0_alpha, and G0 <= G_t <= G_{t+1} <= G_alpha + tol. G comparisons skip
/// the states whose G value needs extrapolation below x_lo.
SuiteResult sandwich_suite(const Mdp& mdp, double alpha, std::size_t horizon, double tol = 1e-8);

/// Finite-horizon actions settle into the infinite-horizon epsilon-optimal
/// sets within `horizon` steps, for F = 0 and F = v0_alpha.
SuiteResult action_convergence_suite(const Mdp& mdp, double alpha, std::size_t horizon, double tol = 1e-8);

SuiteResult brute_force_suite(const Mdp& mdp, double alpha, double tol = 1e-8);

/// Wald identity and overshoot bound at level y from state x.
SuiteResult renewal_suite(const InventoryModel& model, double x, double y, std::size_t n_paths, std::uint64_t seed);

} // namespace ssdp::verify
