#pragma once

#include "ssdp/avg_cost.hpp"
#include "ssdp/inventory_policy.hpp"

#include <optional>
#include <span>
#include <string>

namespace ssdp {

struct AverageReport {
    SsPolicy policy;
    bool degenerate = false; // P(D > 0) = 0: the (0,0) policy, no sweep
    bool settled = false;    // thresholds within one grid step over the last three alphas
    bool bounded = false;    // thresholds stay strictly inside the grid over the last three alphas
    std::optional<VanishingDiscountSweep> sweep;
    std::optional<RelativeValue> relative;
    std::optional<OptimalityCheck> optimality;
    std::string note;
};

/// Limit of the discount-optimal (s_alpha, S_alpha) thresholds as alpha
/// increases along the schedule, checked against the average-cost optimality
/// inequality with the default slack.
AverageReport average_sS(const Mdp& mdp, std::span<const double> schedule, double tol = default_sweep_tol,
                         std::optional<std::size_t> max_iterations = std::nullopt);

} // namespace ssdp
