#include "ssdp/avg_cost.hpp"

#include "ssdp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace ssdp {

std::vector<double> geometric_schedule(std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t k = 1; k <= n; ++k)
        out.push_back(1.0 - std::ldexp(1.0, -static_cast<int>(k)));
    return out;
}

std::vector<double> parse_schedule(const std::string& text) {
    const std::string prefix = "geometric:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string count = text.substr(prefix.size());
        std::size_t pos = 0;
        long n = 0;
        try {
            n = std::stol(count, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != count.size() || n < 1 || n > 52)
            throw ConfigError("schedule: expected geometric:<n> with 1 <= n <= 52");
        return geometric_schedule(static_cast<std::size_t>(n));
    }
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        double a = 0;
        try {
            a = std::stod(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != item.size())
            throw ConfigError("schedule: cannot parse '" + item + "'");
        out.push_back(a);
    }
    if (out.empty())
        throw ConfigError("schedule: empty");
    return out;
}

VanishingDiscountSweep sweep(const Mdp& mdp, std::span<const double> schedule, double tol,
                             std::optional<std::size_t> max_iterations) {
    if (schedule.empty())
        throw ConfigError("sweep: empty schedule");
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (!(schedule[k] >= 0.0 && schedule[k] < 1.0))
            throw ConfigError("alpha must lie in [0,1)");
        if (k > 0 && !(schedule[k] > schedule[k - 1]))
            throw ConfigError("sweep: schedule must be strictly increasing");
    }

    VanishingDiscountSweep out;
    if (schedule.size() < 3)
        out.warnings.push_back("schedule of length " + std::to_string(schedule.size()) +
                               " is insufficient for limit analysis");
    const std::size_t n = mdp.size();
    const double K = mdp.model.K();
    for (double alpha : schedule) {
        AlphaRecord rec;
        rec.alpha = alpha;
        SolveOptions opts;
        opts.tol = tol;
        opts.max_iterations = max_iterations;
        try {
            rec.solve = solve_infinite(mdp, alpha, opts);
        } catch (const ConvergenceError& e) {
            out.partial = true;
            out.stop_reason = e.what();
            out.warnings.push_back(e.what());
            break;
        }
        const auto& v = rec.solve.value.values;
        rec.m_alpha = *std::min_element(v.begin(), v.end());
        rec.one_minus_alpha_m = (1.0 - alpha) * rec.m_alpha;
        rec.u = ValueTable{mdp.grid(), std::vector<double>(n), rec.solve.value.tag};
        for (std::size_t i = 0; i < n; ++i) {
            rec.u.values[i] = v[i] - rec.m_alpha;
            if (v[i] <= rec.m_alpha + default_eps_act)
                rec.minimizers.push_back(i);
        }
        try {
            const auto g = build_G(mdp, rec.solve.value, alpha, GKind::infinite, consistency_tol_for(rec.solve));
            rec.k_convex_ok = is_K_convex(g, K).ok;
            rec.sS = extract_sS(g, K);
        } catch (const Error& e) {
            rec.note = e.what();
        }
        out.alphas.push_back(alpha);
        out.records.push_back(std::move(rec));
    }
    if (out.records.empty())
        return out;

    out.w_estimate = out.records.back().one_minus_alpha_m;
    for (std::size_t k = 1; k < out.records.size(); ++k)
        out.differences.push_back(out.records[k].one_minus_alpha_m - out.records[k - 1].one_minus_alpha_m);
    if (out.differences.size() >= 2) {
        const double scale = std::abs(out.w_estimate);
        const auto small = [&](double d) { return scale > 0 ? std::abs(d) < 0.01 * scale : d == 0.0; };
        out.cauchy = small(out.differences.back()) && small(out.differences[out.differences.size() - 2]);
    }
    if (!out.cauchy)
        out.warnings.push_back("(1-alpha) m_alpha is not Cauchy over the last two schedule steps");
    return out;
}

RelativeValue relative_value(const VanishingDiscountSweep& sw) {
    if (sw.records.empty())
        throw ConfigError("relative_value: empty sweep");
    const auto& last = sw.records.back();
    RelativeValue rel{last.u, last.u, sw.w_estimate};
    if (sw.records.size() >= 2) {
        const auto& prev = sw.records[sw.records.size() - 2];
        // u_alpha = u + (1 - alpha) u' + O((1 - alpha)^2); combine the two
        // tables to cancel the linear term.
        const double r = (1.0 - last.alpha) / (1.0 - prev.alpha);
        for (std::size_t i = 0; i < rel.u.size(); ++i)
            rel.u.values[i] = (last.u[i] - r * prev.u[i]) / (1.0 - r);
        const double m = *std::min_element(rel.u.values.begin(), rel.u.values.end());
        for (double& x : rel.u.values)
            x -= m;
    }
    return rel;
}

BoundednessReport assumption_B_diagnostic(const VanishingDiscountSweep& sw) {
    if (sw.records.size() < 3)
        throw ConfigError("assumption_B_diagnostic: needs at least three alphas");
    const std::size_t n = sw.records.front().u.size();
    const std::size_t last = sw.records.size() - 1;
    BoundednessReport r;
    r.sup_u.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t argmax = 0;
        for (std::size_t k = 0; k < sw.records.size(); ++k) {
            if (sw.records[k].u[i] > r.sup_u[i] || k == 0) {
                r.sup_u[i] = sw.records[k].u[i];
                argmax = k;
            }
        }
        if (argmax < last)
            continue;
        const double prev = sw.records[last - 1].u[i];
        const double growth = sw.records[last].u[i] - prev;
        if (growth <= 0.0 || growth < 0.01 * prev)
            continue;
        r.offending.push_back(i);
    }
    r.bounded = r.offending.empty();
    return r;
}

MinimizerHull minimizer_set_diagnostic(const VanishingDiscountSweep& sw) {
    if (sw.records.empty())
        throw ConfigError("minimizer_set_diagnostic: empty sweep");
    MinimizerHull h;
    h.lo_index = std::numeric_limits<std::size_t>::max();
    for (const auto& rec : sw.records) {
        for (std::size_t i : rec.minimizers) {
            h.lo_index = std::min(h.lo_index, i);
            h.hi_index = std::max(h.hi_index, i);
        }
    }
    const Grid& g = sw.records.front().u.grid;
    h.lo = g.at(h.lo_index);
    h.hi = g.at(h.hi_index);
    h.touches_boundary = h.lo_index == 0 || h.hi_index + 1 == g.size();
    return h;
}

double default_slack(const VanishingDiscountSweep& sw) {
    if (sw.differences.empty())
        return 0.0;
    return 10.0 * std::abs(sw.differences.back());
}

namespace {

double residual_at(const Mdp& mdp, std::size_t i, std::size_t j, const RelativeValue& rel) {
    double eu = 0.0;
    for (const auto& t : mdp.kernel.row(j))
        eu += t.prob * rel.u[t.target];
    return mdp.cost(i, j) + eu - rel.w - rel.u[i];
}

} // namespace

OptimalityCheck check_optimality_inequality(const Mdp& mdp, std::span<const std::size_t> post_levels,
                                            const RelativeValue& rel, double slack) {
    const Grid& g = mdp.grid();
    const std::size_t n = g.size();
    if (post_levels.size() != n || rel.u.size() != n)
        throw ConfigError("check_optimality_inequality: size mismatch");
    const double zone = mdp.model.demand().max_value();
    OptimalityCheck c;
    c.slack = slack;
    c.residual.resize(n);
    c.interior.resize(n);
    c.max_interior = -std::numeric_limits<double>::infinity();
    c.max_boundary = -std::numeric_limits<double>::infinity();
    const double eps = 1e-9 * g.step();
    for (std::size_t i = 0; i < n; ++i) {
        c.residual[i] = residual_at(mdp, i, post_levels[i], rel);
        const double x = g.at(i);
        c.interior[i] = (x >= g.x_lo() + zone - eps && x <= g.x_hi() - zone + eps) ? 1 : 0;
        if (c.interior[i]) {
            c.max_interior = std::max(c.max_interior, c.residual[i]);
            if (c.residual[i] > slack)
                c.failing.push_back(i);
        } else {
            c.max_boundary = std::max(c.max_boundary, c.residual[i]);
        }
    }
    return c;
}

OptimalityCheck check_optimality_inequality(const Mdp& mdp, const PolicyTable& policy, const RelativeValue& rel,
                                            double slack) {
    std::vector<std::size_t> post(policy.size());
    for (std::size_t i = 0; i < post.size(); ++i)
        post[i] = policy.post_level(i);
    return check_optimality_inequality(mdp, post, rel, slack);
}

DiscountActionTrack track_discount_actions(const Mdp& mdp, const VanishingDiscountSweep& sw, std::size_t state,
                                           const RelativeValue& rel, double slack) {
    if (sw.records.empty())
        throw ConfigError("track_discount_actions: empty sweep");
    if (state >= mdp.size())
        throw ConfigError("track_discount_actions: state out of range");
    DiscountActionTrack tr;
    tr.state = state;
    for (const auto& rec : sw.records)
        tr.actions.push_back(rec.solve.policy.action(state));
    const auto [mn, mx] = std::minmax_element(tr.actions.begin(), tr.actions.end());
    tr.range = *mx - *mn;
    const std::size_t k = tr.actions.size();
    tr.settled = k >= 3 && tr.actions[k - 1] == tr.actions[k - 2] && tr.actions[k - 2] == tr.actions[k - 3];
    if (tr.settled) {
        tr.settled_action = tr.actions.back();
        const std::size_t j = state + sw.records.back().solve.policy.chosen[state];
        tr.membership_residual = residual_at(mdp, state, j, rel);
        tr.membership_ok = tr.membership_residual <= slack;
    }
    return tr;
}

} // namespace ssdp
