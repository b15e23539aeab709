#include "ssdp/dp.hpp"

#include "ssdp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ssdp {

using kernels::Exec;

namespace {

void require_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw ConfigError("alpha must lie in [0,1)");
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

void require_finite_nonnegative(std::span<const double> v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x) || x < 0)
            throw ConfigError(std::string(what) + ": values must be finite and >= 0");
}

std::size_t clamped_choices(const Mdp& mdp, const PolicyTable& p) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        n += mdp.kernel.row_clamps(p.post_level(i)) ? 1 : 0;
    return n;
}

} // namespace

BellmanResult bellman_update(const Mdp& mdp, const ValueTable& v, double alpha, double eps_act, Exec exec) {
    require_alpha(alpha);
    require_finite_nonnegative(v.values, "bellman_update");
    const std::size_t n = mdp.size();
    std::vector<double> ev(n);
    kernels::expected_next(mdp.kernel, v.values, ev, exec);

    BellmanResult r{ValueTable{mdp.grid(), std::vector<double>(n), v.tag},
                    PolicyTable{mdp.grid(), std::vector<std::size_t>(n), {}}};
    kernels::bellman_minimize(mdp.cost, ev, alpha, eps_act, r.value.values, r.policy.chosen,
                              &r.policy.action_sets, exec);
    r.value.tag.alpha = alpha;
    if (r.value.tag.horizon)
        ++*r.value.tag.horizon;
    return r;
}

std::vector<Stage> solve_finite(const Mdp& mdp, std::size_t N, const TerminalValue& F, double alpha,
                                double eps_act, Exec exec) {
    require_alpha(alpha);
    if (F.values.size() != mdp.size())
        throw ConfigError("terminal value: one entry per grid state required");
    require_finite_nonnegative(F.values, "terminal value");

    std::vector<Stage> stages;
    stages.reserve(N + 1);
    stages.push_back({ValueTable{mdp.grid(), F.values, Provenance{0, F.id, alpha}}, std::nullopt});
    for (std::size_t t = 0; t < N; ++t) {
        auto r = bellman_update(mdp, stages.back().value, alpha, eps_act, exec);
        stages.push_back({std::move(r.value), std::move(r.policy)});
    }
    return stages;
}

const PolicyTable& markov_policy_at_epoch(const std::vector<Stage>& stages, std::size_t t) {
    const std::size_t N = stages.size() - 1;
    if (t >= N)
        throw ConfigError("epoch must be < horizon");
    return *stages[N - t].policy;
}

double stopping_threshold(double alpha, double tol) {
    return alpha > 0.0 ? tol * (1.0 - alpha) / (2.0 * alpha) : tol;
}

std::size_t default_iteration_cap(double alpha, double tol) {
    if (alpha <= 0.0)
        return 100;
    const double k = std::ceil(std::log(tol * (1.0 - alpha)) / std::log(alpha));
    return 10 * static_cast<std::size_t>(std::max(k, 0.0)) + 100;
}

SolveReport solve_infinite(const Mdp& mdp, double alpha, const SolveOptions& opts) {
    require_alpha(alpha);
    if (!(opts.tol > 0))
        throw ConfigError("tol must be > 0");
    const std::size_t n = mdp.size();
    const double threshold = stopping_threshold(alpha, opts.tol);
    const std::size_t cap = opts.max_iterations.value_or(default_iteration_cap(alpha, opts.tol));

    std::vector<double> v(n, 0.0), next(n), ev(n);
    std::vector<std::size_t> chosen(n);
    SolveReport rep{ValueTable{mdp.grid(), {}, Provenance{std::nullopt, TerminalId::zero, alpha}},
                    PolicyTable{mdp.grid(), {}, {}}};
    rep.alpha = alpha;
    rep.tol = opts.tol;

    for (std::size_t it = 1;; ++it) {
        kernels::expected_next(mdp.kernel, v, ev, opts.exec);
        kernels::bellman_minimize(mdp.cost, ev, alpha, opts.eps_act, next, chosen, nullptr, opts.exec);
        const double residual = sup_distance(next, v);
        rep.residual_history.push_back(residual);
        v.swap(next);
        // At alpha = 0 the first update is already the fixed point.
        if (residual <= threshold || alpha == 0.0) {
            rep.iterations = it;
            rep.residual = alpha == 0.0 ? 0.0 : residual;
            break;
        }
        if (it >= cap)
            throw ConvergenceError("solve_infinite: iteration cap " + std::to_string(cap) +
                                   " exceeded at alpha=" + std::to_string(alpha) +
                                   " (residual " + std::to_string(residual) + ", threshold " +
                                   std::to_string(threshold) + ")");
    }

    // Policy and action sets greedy with respect to the returned v.
    rep.value.values = v;
    BellmanResult greedy = bellman_update(mdp, rep.value, alpha, opts.eps_act, opts.exec);
    rep.policy = std::move(greedy.policy);
    rep.bound_set_sizes.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        rep.bound_set_sizes[i] = action_bound_set(i, mdp, rep.value).size();
    rep.clamp_events = clamped_choices(mdp, rep.policy);
    return rep;
}

ValueTable policy_evaluation_post(const Mdp& mdp, std::span<const std::size_t> post_levels, double alpha,
                                  double tol, Exec exec) {
    require_alpha(alpha);
    const std::size_t n = mdp.size();
    if (post_levels.size() != n)
        throw ConfigError("policy_evaluation: one action per state required");
    for (std::size_t i = 0; i < n; ++i)
        if (post_levels[i] < i || post_levels[i] >= n)
            throw ConfigError("policy_evaluation: infeasible action");
    const double threshold = stopping_threshold(alpha, tol);
    const std::size_t cap = default_iteration_cap(alpha, tol);
    std::vector<double> v(n, 0.0), next(n), ev(n);
    for (std::size_t it = 1;; ++it) {
        kernels::expected_next(mdp.kernel, v, ev, exec);
        kernels::policy_apply(mdp.cost, post_levels, ev, alpha, next, exec);
        const double residual = sup_distance(next, v);
        v.swap(next);
        if (residual <= threshold || alpha == 0.0)
            break;
        if (it >= cap)
            throw ConvergenceError("policy_evaluation: iteration cap exceeded at alpha=" + std::to_string(alpha));
    }
    return ValueTable{mdp.grid(), std::move(v), Provenance{std::nullopt, TerminalId::zero, alpha}};
}

ValueTable policy_evaluation(const Mdp& mdp, const PolicyTable& policy, double alpha, double tol, Exec exec) {
    std::vector<std::size_t> post(policy.size());
    for (std::size_t i = 0; i < post.size(); ++i)
        post[i] = policy.post_level(i);
    return policy_evaluation_post(mdp, post, alpha, tol, exec);
}

AdmissibilityReport check_terminal_admissible(const TerminalValue& F, const Mdp& mdp, double alpha,
                                              const ValueTable& v_alpha) {
    constexpr double slack = 1e-9;
    AdmissibilityReport r;
    const auto one = bellman_update(mdp, ValueTable{mdp.grid(), F.values, {0, F.id, alpha}}, alpha);
    r.max_F_minus_v = -std::numeric_limits<double>::infinity();
    r.max_F_minus_TF = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < mdp.size(); ++i) {
        r.max_F_minus_v = std::max(r.max_F_minus_v, F.values[i] - v_alpha[i]);
        r.max_F_minus_TF = std::max(r.max_F_minus_TF, F.values[i] - one.value[i]);
    }
    r.F_le_v_alpha = r.max_F_minus_v <= slack;
    r.one_step_ge_F = r.max_F_minus_TF <= slack;
    return r;
}

std::vector<std::size_t> action_bound_set(std::size_t i, const Mdp& mdp, const ValueTable& v_alpha) {
    if (!std::isfinite(v_alpha[i]))
        throw ConfigError("action_bound_set: v_alpha(x) must be finite");
    std::vector<std::size_t> out;
    for (std::size_t j = i; j < mdp.size(); ++j)
        if (mdp.cost(i, j) <= v_alpha[i] + 1e-9)
            out.push_back(j - i);
    return out;
}

ActionConvergence track_action_convergence(const Mdp& mdp, double alpha, const TerminalValue& F, std::size_t T_max,
                                           const SolveReport& infinite) {
    ActionConvergence out;
    out.T_max = T_max;
    out.admissibility = check_terminal_admissible(F, mdp, alpha, infinite.value);
    if (!out.admissibility.ok())
        throw ConfigError("track_action_convergence: terminal value fails the admissibility checks");

    const std::size_t n = mdp.size();
    const double step = mdp.grid().step();
    std::vector<std::vector<std::size_t>> bound_sets(n);
    for (std::size_t i = 0; i < n; ++i)
        bound_sets[i] = action_bound_set(i, mdp, infinite.value);

    out.distance.assign(n, std::vector<double>(T_max, 0.0));
    ValueTable v{mdp.grid(), F.values, {0, F.id, alpha}};
    for (std::size_t t = 1; t <= T_max; ++t) {
        auto r = bellman_update(mdp, v, alpha);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& target = infinite.policy.action_sets[i];
            const double a = static_cast<double>(r.policy.chosen[i]);
            double d = std::numeric_limits<double>::infinity();
            for (std::size_t b : target)
                d = std::min(d, std::abs(a - static_cast<double>(b)));
            out.distance[i][t - 1] = d * step;
            for (std::size_t a_t : r.policy.action_sets[i])
                if (!std::binary_search(bound_sets[i].begin(), bound_sets[i].end(), a_t))
                    out.bound_set_containment = false;
        }
        v = std::move(r.value);
    }

    out.settle_time.assign(n, std::nullopt);
    for (std::size_t i = 0; i < n; ++i) {
        std::optional<std::size_t> ts;
        for (std::size_t t = T_max; t >= 1; --t) {
            if (out.distance[i][t - 1] > step * (1.0 + 1e-12))
                break;
            ts = t;
        }
        out.settle_time[i] = ts;
        if (!ts)
            out.unsettled.push_back(i);
    }
    return out;
}

} // namespace ssdp
