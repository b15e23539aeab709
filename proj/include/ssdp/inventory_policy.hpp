#pragma once

#include "ssdp/dp.hpp"
#include "ssdp/kernels.hpp"
#include "ssdp/model.hpp"
#include "ssdp/tables.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ssdp {

enum class GKind { finite_t, infinite, H_average };

std::string to_string(GKind kind);

/// G(y) = c_bar y + E h(y - D) + alpha E v(y - D) on the grid (alpha factor
/// dropped for the average-cost H built from a relative value function).
struct GFunction {
    Grid grid;
    std::vector<double> values;
    GKind kind = GKind::infinite;
    std::optional<std::size_t> t;
    TerminalId terminal = TerminalId::zero;
    double alpha = 0.0;
    /// Evaluations of v below x_lo that used linear extrapolation.
    std::size_t extrapolation_count = 0;
    /// max |min{K + min_{z >= x} G(z), G(x)} - c_bar x - v(x)| over states at
    /// least one max-demand above x_lo; set for kind == infinite.
    std::optional<double> consistency_error;

    double operator[](std::size_t i) const noexcept { return values[i]; }
    std::size_t size() const noexcept { return values.size(); }
};

inline constexpr double g_consistency_tol = 1e-7;

/// Throws VerificationError when kind == infinite and the reformulated
/// optimality equation does not reproduce v within consistency_tol.
GFunction build_G(const Mdp& mdp, const ValueTable& v, double alpha, GKind kind,
                  double consistency_tol = g_consistency_tol);

/// g_consistency_tol, widened to twice the last update of a solve run at a
/// looser tolerance.
double consistency_tol_for(const SolveReport& solve);

/// v(z) for arbitrary z: linear interpolation on the grid, linear
/// extrapolation from the two lowest points below x_lo, flat above x_hi.
double evaluate_extended(const ValueTable& v, double z, bool* extrapolated = nullptr);

struct SsPolicy {
    double s = 0.0;
    double S = 0.0;
    std::size_t s_index = 0;
    std::size_t S_index = 0;
    double alpha = 0.0;
    std::string context; // "t=<k>", "infinite" or "average"
    TerminalId terminal = TerminalId::zero;

    /// Order up to S below s, otherwise nothing.
    double order_quantity(double x) const noexcept { return x < s ? S - x : 0.0; }
    /// Post-order grid level for each state of `grid`.
    std::vector<std::size_t> post_levels(const Grid& grid) const;
    PolicyTable as_policy_table(const Grid& grid) const;
};

/// S = smallest grid argmin of g, s = smallest grid x <= S with
/// g(x) <= K + g(S) + 1e-9. Throws ConfigError("grid too narrow") when the
/// argmin sits on the grid boundary.
SsPolicy extract_sS(const GFunction& g, double K);

struct KConvexReport {
    bool ok = false;
    kernels::TripleViolation worst;
    double x_lo = 0.0, x_mid = 0.0, x_hi = 0.0; // worst triple in inventory units
    bool fast_path_rejected = false;            // decided by the consecutive-triple pass
};

KConvexReport is_K_convex(const GFunction& g, double K, double tol = 1e-9,
                          kernels::Exec exec = kernels::Exec::parallel);

struct ZeroSetup {
    SolveReport solve; // K = 0 model; solve.value is v^0_alpha
    GFunction G0;
    KConvexReport convexity;

    TerminalValue terminal() const { return {solve.value.values, TerminalId::v0_alpha}; }
};

/// Solves the K = 0 model and certifies that G^0_alpha is convex on the grid.
ZeroSetup solve_zero_setup(const Mdp& mdp, double alpha, double tol);

/// Properties of G^0_alpha and G_alpha that the (s,S) optimality argument needs:
/// G^0 has an interior argmin and decreases at x_lo, and G_alpha is K-convex.
struct AlphaUsability {
    bool g0_interior_argmin = false;
    bool g0_decreasing_at_lo = false;
    bool g_alpha_k_convex = false;
    bool usable() const noexcept { return g0_interior_argmin && g0_decreasing_at_lo && g_alpha_k_convex; }
};

struct FiniteHorizonReport {
    ZeroSetup zero;
    std::vector<Stage> stages;          // v_{t, v0, alpha}, t = 0..N
    std::vector<GFunction> G;           // G_{t, v0, alpha}, t = 0..N-1
    std::vector<KConvexReport> kconvex; // per G[t]
    std::vector<SsPolicy> epochs;       // (s_t, S_t) for decision epoch t = 0..N-1
    std::size_t mismatches = 0;         // (epoch, state) pairs where (s_t,S_t) leaves the DP action set
    std::vector<std::string> warnings;

    bool matches_dp() const noexcept { return mismatches == 0; }
};

/// Optimal (s_t, S_t) thresholds of the N-horizon problem with terminal value
/// v^0_alpha, cross-checked against the DP action sets at every state and epoch.
FiniteHorizonReport finite_horizon_sS(const Mdp& mdp, double alpha, std::size_t N, double tol = 1e-8);

struct ThresholdPoint {
    std::size_t t;
    SsPolicy policy;
    bool k_convex_ok;
};

struct DiscountedReport {
    SolveReport solve;
    ZeroSetup zero;
    GFunction G;
    KConvexReport kconvex;
    AlphaUsability usability;
    std::optional<SsPolicy> policy; // withheld when !usability.usable()
    std::optional<PolicyTable> fallback;
    std::string explanation;
    double max_evaluation_gap = 0.0; // max_x |v^{(s,S)}_alpha(x) - v_alpha(x)|
    bool value_match = false;        // gap <= 10 tol
    std::vector<ThresholdPoint> sequence; // (s*_{t}, S*_{t}) from G_{t, v0, alpha}
    std::optional<std::size_t> settle_t;  // sequence equals (s_alpha, S_alpha) from here on
};

DiscountedReport discounted_sS(const Mdp& mdp, double alpha, double tol = 1e-8, std::size_t sequence_length = 200);

struct SlopeCondition {
    bool holds = false;
    std::optional<std::pair<double, double>> witness; // (z, y), z < y
    double quotient = 0.0;
};

/// Some consecutive grid pair has (h(y) - h(z)) / (y - z) < -c_bar.
SlopeCondition slope_condition(const InventoryModel& model);

} // namespace ssdp
