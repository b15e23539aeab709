#include "ssdp/inventory_policy.hpp"

#include "ssdp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ssdp {

std::string to_string(GKind kind) {
    switch (kind) {
    case GKind::finite_t: return "finite_t";
    case GKind::infinite: return "infinite";
    case GKind::H_average: return "H_average";
    }
    return "infinite";
}

double evaluate_extended(const ValueTable& v, double z, bool* extrapolated) {
    const Grid& g = v.grid;
    if (extrapolated)
        *extrapolated = false;
    if (z < g.x_lo() - 1e-9 * g.step()) {
        if (extrapolated)
            *extrapolated = true;
        const double slope = (v[1] - v[0]) / g.step();
        return v[0] + slope * (z - g.x_lo());
    }
    const auto b = g.locate(z);
    if (b.weight_hi == 0.0)
        return v[b.lo];
    return (1.0 - b.weight_hi) * v[b.lo] + b.weight_hi * v[b.lo + 1];
}

double consistency_tol_for(const SolveReport& solve) { return std::max(g_consistency_tol, 2.0 * solve.residual); }

GFunction build_G(const Mdp& mdp, const ValueTable& v, double alpha, GKind kind, double consistency_tol) {
    const Grid& grid = mdp.grid();
    const std::size_t n = grid.size();
    if (v.size() != n)
        throw ConfigError("build_G: value table does not match the grid");
    for (double x : v.values)
        if (!std::isfinite(x))
            throw ConfigError("build_G: value table must be finite");

    GFunction g{grid, std::vector<double>(n), kind, v.tag.horizon, v.tag.terminal, alpha};
    const double weight = kind == GKind::H_average ? 1.0 : alpha;
    const auto holding = mdp.cost.expected_holding();
    const auto atoms = mdp.model.demand().atoms();
    for (std::size_t j = 0; j < n; ++j) {
        const double y = grid.at(j);
        double future = 0.0;
        for (const auto& a : atoms) {
            bool extrapolated = false;
            future += a.prob * evaluate_extended(v, y - a.value, &extrapolated);
            g.extrapolation_count += extrapolated ? 1 : 0;
        }
        g.values[j] = mdp.model.c_bar() * y + holding[j] + weight * future;
    }

    if (kind == GKind::infinite) {
        const double K = mdp.model.K();
        const double first = grid.x_lo() + mdp.model.demand().max_value() - 1e-9 * grid.step();
        double err = 0.0;
        double suffix_min = std::numeric_limits<double>::infinity(); // min_{z > x} G(z)
        for (std::size_t i = n; i-- > 0;) {
            if (grid.at(i) >= first) {
                const double rhs = std::min(g.values[i], K + std::min(suffix_min, g.values[i])) -
                                   mdp.model.c_bar() * grid.at(i);
                err = std::max(err, std::abs(rhs - v[i]));
            }
            suffix_min = std::min(suffix_min, g.values[i]);
        }
        g.consistency_error = err;
        if (err > consistency_tol)
            throw VerificationError("build_G: reformulated optimality equation misses v_alpha by " +
                                    std::to_string(err) + " (grid or tolerance misconfigured)");
    }
    return g;
}

std::vector<std::size_t> SsPolicy::post_levels(const Grid& grid) const {
    std::vector<std::size_t> post(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        post[i] = i < s_index ? S_index : i;
    return post;
}

PolicyTable SsPolicy::as_policy_table(const Grid& grid) const {
    auto post = post_levels(grid);
    std::vector<std::size_t> chosen(post.size());
    for (std::size_t i = 0; i < post.size(); ++i)
        chosen[i] = post[i] - i;
    return PolicyTable::from_chosen(grid, std::move(chosen));
}

SsPolicy extract_sS(const GFunction& g, double K) {
    const std::size_t n = g.size();
    if (n < 3)
        throw ConfigError("extract_sS: grid too narrow");
    std::size_t S = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(g[i]))
            throw ConfigError("extract_sS: G is not finite on the grid");
        if (g[i] < g[S])
            S = i;
    }
    if (S == 0 || S == n - 1)
        throw ConfigError("extract_sS: grid too narrow (argmin of G on the grid boundary at x=" +
                          std::to_string(g.grid.at(S)) + ")");
    std::size_t s = S;
    for (std::size_t i = 0; i <= S; ++i) {
        if (g[i] <= K + g[S] + 1e-9) {
            s = i;
            break;
        }
    }
    SsPolicy p;
    p.s_index = s;
    p.S_index = S;
    p.s = g.grid.at(s);
    p.S = g.grid.at(S);
    p.alpha = g.alpha;
    p.terminal = g.terminal;
    switch (g.kind) {
    case GKind::finite_t: p.context = "t=" + std::to_string(g.t.value_or(0)); break;
    case GKind::infinite: p.context = "infinite"; break;
    case GKind::H_average: p.context = "average"; break;
    }
    return p;
}

KConvexReport is_K_convex(const GFunction& g, double K, double tol, kernels::Exec exec) {
    std::vector<double> xs(g.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        xs[i] = g.grid.at(i);
    KConvexReport r;
    r.worst = kernels::k_convex_scan_consecutive(xs, g.values, K);
    if (r.worst.violation > tol) {
        r.fast_path_rejected = true;
    } else {
        r.worst = kernels::k_convex_scan(xs, g.values, K, exec);
    }
    r.ok = !(r.worst.violation > tol);
    if (g.size() >= 3) {
        r.x_lo = xs[r.worst.lo];
        r.x_mid = xs[r.worst.mid];
        r.x_hi = xs[r.worst.hi];
    }
    return r;
}

ZeroSetup solve_zero_setup(const Mdp& mdp, double alpha, double tol) {
    const Mdp zero(mdp.model.with_K(0.0));
    SolveOptions opts;
    opts.tol = tol;
    ZeroSetup z{solve_infinite(zero, alpha, opts), {mdp.grid(), {}}, {}};
    z.solve.value.tag.terminal = TerminalId::v0_alpha;
    z.G0 = build_G(zero, z.solve.value, alpha, GKind::infinite, consistency_tol_for(z.solve));
    z.convexity = is_K_convex(z.G0, 0.0);
    if (!z.convexity.ok)
        throw VerificationError("solve_zero_setup: G0 is not convex on the grid (violation " +
                                std::to_string(z.convexity.worst.violation) + " at x=" +
                                std::to_string(z.convexity.x_mid) + ")");
    return z;
}

FiniteHorizonReport finite_horizon_sS(const Mdp& mdp, double alpha, std::size_t N, double tol) {
    FiniteHorizonReport r{solve_zero_setup(mdp, alpha, tol)};
    r.stages = solve_finite(mdp, N, r.zero.terminal(), alpha);
    const double K = mdp.model.K();
    for (std::size_t t = 0; t < N; ++t) {
        r.G.push_back(build_G(mdp, r.stages[t].value, alpha, GKind::finite_t));
        r.kconvex.push_back(is_K_convex(r.G.back(), K));
        if (!r.kconvex.back().ok) {
            const auto& kc = r.kconvex.back();
            r.warnings.push_back("G_" + std::to_string(t) + " is not K-convex: violation " +
                                 std::to_string(kc.worst.violation) + " at triple (" + std::to_string(kc.x_lo) +
                                 ", " + std::to_string(kc.x_mid) + ", " + std::to_string(kc.x_hi) + ")");
        }
    }
    // Epoch t of the N-horizon problem acts on G_{N-t-1}.
    for (std::size_t t = 0; t < N; ++t) {
        SsPolicy p = extract_sS(r.G[N - t - 1], K);
        const PolicyTable& dp = markov_policy_at_epoch(r.stages, t);
        const auto post = p.post_levels(mdp.grid());
        for (std::size_t i = 0; i < mdp.size(); ++i) {
            const auto& set = dp.action_sets[i];
            if (!std::binary_search(set.begin(), set.end(), post[i] - i))
                ++r.mismatches;
        }
        r.epochs.push_back(std::move(p));
    }
    return r;
}

DiscountedReport discounted_sS(const Mdp& mdp, double alpha, double tol, std::size_t sequence_length) {
    SolveOptions opts;
    opts.tol = tol;
    DiscountedReport r{solve_infinite(mdp, alpha, opts), solve_zero_setup(mdp, alpha, tol), {mdp.grid(), {}}};
    const double K = mdp.model.K();
    r.G = build_G(mdp, r.solve.value, alpha, GKind::infinite, consistency_tol_for(r.solve));
    r.kconvex = is_K_convex(r.G, K);

    const auto& g0 = r.zero.G0.values;
    const auto argmin0 = static_cast<std::size_t>(std::min_element(g0.begin(), g0.end()) - g0.begin());
    r.usability.g0_interior_argmin = argmin0 > 0 && argmin0 + 1 < g0.size();
    r.usability.g0_decreasing_at_lo = g0.size() > 1 && g0[0] > g0[1];
    r.usability.g_alpha_k_convex = r.kconvex.ok;
    if (!r.usability.usable()) {
        r.fallback = r.solve.policy;
        r.explanation = "alpha below the detected (s,S) threshold:";
        if (!r.usability.g0_interior_argmin)
            r.explanation += " G0 has no interior argmin;";
        if (!r.usability.g0_decreasing_at_lo)
            r.explanation += " G0 does not decrease at x_lo;";
        if (!r.usability.g_alpha_k_convex)
            r.explanation += " G_alpha is not K-convex;";
        r.explanation += " returning the raw DP policy";
        return r;
    }

    r.policy = extract_sS(r.G, K);
    const auto post = r.policy->post_levels(mdp.grid());
    const auto eval = policy_evaluation_post(mdp, post, alpha, tol);
    for (std::size_t i = 0; i < mdp.size(); ++i)
        r.max_evaluation_gap = std::max(r.max_evaluation_gap, std::abs(eval[i] - r.solve.value[i]));
    r.value_match = r.max_evaluation_gap <= 10.0 * tol;

    ValueTable v{mdp.grid(), r.zero.solve.value.values, {0, TerminalId::v0_alpha, alpha}};
    for (std::size_t t = 0; t < sequence_length; ++t) {
        const auto gt = build_G(mdp, v, alpha, GKind::finite_t);
        r.sequence.push_back({t, extract_sS(gt, K), is_K_convex(gt, K).ok});
        v = bellman_update(mdp, v, alpha).value;
    }
    for (std::size_t k = r.sequence.size(); k-- > 0;) {
        const auto& p = r.sequence[k].policy;
        if (p.s_index != r.policy->s_index || p.S_index != r.policy->S_index)
            break;
        r.settle_t = r.sequence[k].t;
    }
    return r;
}

SlopeCondition slope_condition(const InventoryModel& model) {
    SlopeCondition out;
    const Grid& g = model.grid();
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double z = g.at(i), y = g.at(i + 1);
        const double q = (model.h()(y) - model.h()(z)) / (y - z);
        if (q < -model.c_bar() - 1e-12) {
            out.holds = true;
            out.witness = std::make_pair(z, y);
            out.quotient = q;
            return out;
        }
    }
    return out;
}

} // namespace ssdp
