#pragma once

#include "ssdp/dp.hpp"
#include "ssdp/inventory_policy.hpp"
#include "ssdp/model.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ssdp {

/// alpha_k = 1 - 2^-k, k = 1..n
std::vector<double> geometric_schedule(std::size_t n);
/// Parses "geometric:<n>" or a comma-separated list of discount factors.
std::vector<double> parse_schedule(const std::string& text);

inline constexpr double default_sweep_tol = 1e-6;

struct AlphaRecord {
    double alpha = 0.0;
    double m_alpha = 0.0;           // min_x v_alpha(x)
    double one_minus_alpha_m = 0.0; // (1 - alpha) m_alpha
    ValueTable u;                   // v_alpha - m_alpha
    std::vector<std::size_t> minimizers;
    std::optional<SsPolicy> sS;     // thresholds of G_alpha when extractable
    bool k_convex_ok = false;
    std::string note;
    SolveReport solve;
};

struct VanishingDiscountSweep {
    std::vector<double> alphas;
    std::vector<AlphaRecord> records;
    double w_estimate = 0.0;          // (1 - alpha_last) m_{alpha_last}
    std::vector<double> differences;  // successive differences of (1 - alpha) m_alpha
    bool cauchy = false;              // last two differences < 1% of w_estimate
    bool partial = false;             // solver gave up at some alpha
    std::string stop_reason;          // the solver error when partial
    std::vector<std::string> warnings;
};

/// Discounted solves across an increasing schedule. A non-converging solve
/// ends the sweep early with `partial` set.
VanishingDiscountSweep sweep(const Mdp& mdp, std::span<const double> schedule, double tol = default_sweep_tol,
                             std::optional<std::size_t> max_iterations = std::nullopt);

/// Relative value function for the average-cost checks.
struct RelativeValue {
    /// First-order vanishing-discount extrapolation 2 u_{alpha_n} - u_{alpha_{n-1}}
    /// of the last two records, shifted to min 0. Equals u_last when the sweep
    /// has fewer than two records.
    ValueTable u;
    ValueTable u_last; // u_alpha at the last alpha
    double w = 0.0;    // w_estimate of the sweep
};

RelativeValue relative_value(const VanishingDiscountSweep& sweep);

struct BoundednessReport {
    std::vector<double> sup_u; // per state, over the schedule
    bool bounded = false;
    std::vector<std::size_t> offending;
};

/// Per-state supremum of u_alpha over the schedule. A state passes when its
/// supremum is attained before the last alpha or grew by < 1% over the last
/// two alphas. Needs at least three records.
BoundednessReport assumption_B_diagnostic(const VanishingDiscountSweep& sweep);

struct MinimizerHull {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t lo_index = 0;
    std::size_t hi_index = 0;
    bool touches_boundary = false;
    bool ok() const noexcept { return !touches_boundary; }
};

MinimizerHull minimizer_set_diagnostic(const VanishingDiscountSweep& sweep);

struct OptimalityCheck {
    std::vector<double> residual;  // c(x, phi(x)) + E u(x') - w - u(x)
    std::vector<char> interior;    // outside the max-demand boundary zone
    double max_interior = 0.0;
    double max_boundary = 0.0;
    double slack = 0.0;
    std::vector<std::size_t> failing; // interior states with residual > slack
    bool pass() const noexcept { return failing.empty(); }
};

/// 10 |last difference of (1 - alpha) m_alpha|
double default_slack(const VanishingDiscountSweep& sweep);

OptimalityCheck check_optimality_inequality(const Mdp& mdp, std::span<const std::size_t> post_levels,
                                            const RelativeValue& rel, double slack);
OptimalityCheck check_optimality_inequality(const Mdp& mdp, const PolicyTable& policy, const RelativeValue& rel,
                                            double slack);

struct DiscountActionTrack {
    std::size_t state = 0;
    std::vector<double> actions; // chosen action at each alpha, inventory units
    double range = 0.0;          // max - min over the schedule
    bool settled = false;        // identical over the last three alphas
    std::optional<double> settled_action;
    double membership_residual = 0.0; // c(x,a*) + E u(x') - w - u(x) for the settled action
    bool membership_ok = false;
};

DiscountActionTrack track_discount_actions(const Mdp& mdp, const VanishingDiscountSweep& sweep, std::size_t state,
                                           const RelativeValue& rel, double slack);

} // namespace ssdp
