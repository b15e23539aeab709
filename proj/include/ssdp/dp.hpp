#pragma once

#include "ssdp/kernels.hpp"
#include "ssdp/model.hpp"
#include "ssdp/tables.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ssdp {

/// Absolute tolerance for membership in an epsilon-optimal action set.
inline constexpr double default_eps_act = 1e-9;

struct TerminalValue {
    std::vector<double> values;
    TerminalId id = TerminalId::zero;

    static TerminalValue zero(std::size_t n) { return {std::vector<double>(n, 0.0), TerminalId::zero}; }
};

struct BellmanResult {
    ValueTable value;
    PolicyTable policy;
};

/// One application of the discounted Bellman operator to v.
BellmanResult bellman_update(const Mdp& mdp, const ValueTable& v, double alpha,
                             double eps_act = default_eps_act,
                             kernels::Exec exec = kernels::Exec::parallel);

struct Stage {
    ValueTable value;                  // v_t
    std::optional<PolicyTable> policy; // minimizers producing v_t; empty for t = 0
};

/// v_0 = F, v_{t+1} = T v_t for t < N.
std::vector<Stage> solve_finite(const Mdp& mdp, std::size_t N, const TerminalValue& F, double alpha,
                                double eps_act = default_eps_act,
                                kernels::Exec exec = kernels::Exec::parallel);

/// Decision rule at epoch t of the N-horizon problem (N = stages.size() - 1):
/// the minimizers of stage N - t.
const PolicyTable& markov_policy_at_epoch(const std::vector<Stage>& stages, std::size_t t);

struct SolveOptions {
    double tol = 1e-8;
    double eps_act = default_eps_act;
    std::optional<std::size_t> max_iterations; // default: default_iteration_cap()
    kernels::Exec exec = kernels::Exec::parallel;
};

/// Residual threshold tol (1 - alpha) / (2 alpha) that certifies the final
/// iterate is within tol of the fixed point; tol itself at alpha = 0.
double stopping_threshold(double alpha, double tol);
std::size_t default_iteration_cap(double alpha, double tol);

struct SolveReport {
    ValueTable value;
    PolicyTable policy;
    std::size_t iterations = 0;
    double residual = 0.0;
    std::vector<double> residual_history;
    std::vector<std::size_t> bound_set_sizes; // |D*_alpha(x)| per state
    std::size_t clamp_events = 0;             // states whose chosen post-order level has clamped transitions
    double alpha = 0.0;
    double tol = 0.0;
};

/// Value iteration from v = 0 until the contraction bound certifies tol.
/// Throws ConvergenceError when the iteration cap is exceeded.
SolveReport solve_infinite(const Mdp& mdp, double alpha, const SolveOptions& opts = {});

/// Discounted value of a stationary policy, iterated from 0 with the same
/// stopping rule as solve_infinite.
ValueTable policy_evaluation(const Mdp& mdp, const PolicyTable& policy, double alpha, double tol,
                             kernels::Exec exec = kernels::Exec::parallel);
/// Same, with the policy given as a post-order grid level per state.
ValueTable policy_evaluation_post(const Mdp& mdp, std::span<const std::size_t> post_levels, double alpha,
                                  double tol, kernels::Exec exec = kernels::Exec::parallel);

struct AdmissibilityReport {
    bool F_le_v_alpha = false;
    bool one_step_ge_F = false;
    double max_F_minus_v = 0.0;     // max_x F(x) - v_alpha(x)
    double max_F_minus_TF = 0.0;    // max_x F(x) - v_{1,F,alpha}(x)
    bool ok() const noexcept { return F_le_v_alpha && one_step_ge_F; }
};

/// F <= v_alpha and v_{1,F,alpha} >= F gridwise, each with 1e-9 slack.
AdmissibilityReport check_terminal_admissible(const TerminalValue& F, const Mdp& mdp, double alpha,
                                              const ValueTable& v_alpha);

/// {a : c(x_i, a) <= v_alpha(x_i) + 1e-9}, in grid steps.
std::vector<std::size_t> action_bound_set(std::size_t i, const Mdp& mdp, const ValueTable& v_alpha);

struct ActionConvergence {
    std::size_t T_max = 0;
    /// distance[i][t - 1] = dist(chosen_t(x_i), A_alpha(x_i)) in inventory units
    std::vector<std::vector<double>> distance;
    /// First t after which the distance stays <= one grid step through T_max.
    std::vector<std::optional<std::size_t>> settle_time;
    std::vector<std::size_t> unsettled;
    /// A_{t,F,alpha}(x) is contained in D*_alpha(x) for all t >= 1 and all x.
    bool bound_set_containment = true;
    AdmissibilityReport admissibility;

    bool settled() const noexcept { return unsettled.empty(); }
};

/// Runs T_max value iterations from F and measures how far the chosen
/// finite-horizon actions are from the infinite-horizon optimal sets.
/// Throws ConfigError when F fails check_terminal_admissible.
ActionConvergence track_action_convergence(const Mdp& mdp, double alpha, const TerminalValue& F, std::size_t T_max,
                                           const SolveReport& infinite);

} // namespace ssdp
