#pragma once

#include "ssdp/inventory_policy.hpp"
#include "ssdp/kernels.hpp"
#include "ssdp/model.hpp"
#include "ssdp/tables.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ssdp {

struct NeverOrder {};
struct OrderUpTo {
    double level;
};

using SimPolicy = std::variant<SsPolicy, PolicyTable, NeverOrder, OrderUpTo>;

/// Order quantity at an arbitrary (possibly off-grid) level. A PolicyTable
/// answers with the post-order level of the nearest grid state; below the
/// grid it keeps ordering up to the level chosen at x_lo.
double order_quantity(const SimPolicy& policy, double x);

struct SimConfig {
    double x0 = 0.0;
    std::size_t horizon = 1;
    std::size_t n_paths = 1;
    std::uint64_t seed = 0;
    std::optional<double> alpha;
    SimPolicy policy = NeverOrder{};
};

struct SimEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t burn_in = 0;
    /// alpha^horizon / (1 - alpha) times the largest one-step cost seen.
    double bias_bound = 0.0;
    std::size_t n_paths = 0;
    std::size_t horizon = 0;
};

/// Expected discounted cost over `horizon` steps (no terminal cost). States
/// evolve without clamping, x' = x + a - d; each step is charged the exact
/// one-step cost c(x, a).
SimEstimate simulate_discounted(const InventoryModel& model, const SimConfig& cfg,
                                kernels::Exec exec = kernels::Exec::parallel);

/// Per-path average cost after discarding the first horizon/10 steps.
/// Requires horizon >= 1000.
SimEstimate simulate_average(const InventoryModel& model, const SimConfig& cfg,
                             kernels::Exec exec = kernels::Exec::parallel);

enum class Criterion { discounted, average };

std::string to_string(Criterion c);

struct PolicyComparisonRow {
    std::string policy_id;
    Criterion criterion = Criterion::average;
    double mean = 0.0;
    double std_error = 0.0;
    double diff_vs_first = 0.0; // paired, common random numbers
    double diff_std_error = 0.0;
};

/// Evaluates every policy on identical per-path demand streams. The criterion
/// is discounted when cfg.alpha is set, average otherwise; cfg.policy is ignored.
std::vector<PolicyComparisonRow> compare_policies(const InventoryModel& model,
                                                  const std::vector<std::pair<std::string, SimPolicy>>& policies,
                                                  const SimConfig& cfg,
                                                  kernels::Exec exec = kernels::Exec::parallel);

} // namespace ssdp
