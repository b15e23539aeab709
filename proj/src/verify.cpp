#include "ssdp/verify.hpp"

#include "ssdp/dp.hpp"
#include "ssdp/error.hpp"
#include "ssdp/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ssdp::verify {

bool SuiteResult::pass() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

CheckResult at_most(std::string name, double measured, double threshold, std::string detail = {}) {
    return {std::move(name), measured <= threshold, measured, threshold, std::move(detail)};
}

// First state whose G value needs no extrapolation below x_lo.
std::size_t first_unextrapolated(const Mdp& mdp) {
    const Grid& g = mdp.grid();
    const double d_max = mdp.model.demand().max_value();
    std::size_t i = 0;
    while (i < g.size() && g.at(i) - d_max < g.x_lo() - 1e-9 * g.step())
        ++i;
    return i;
}

double max_excess(const std::vector<double>& a, const std::vector<double>& b, std::size_t from = 0) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = from; i < a.size(); ++i)
        worst = std::max(worst, a[i] - b[i]);
    return worst;
}

} // namespace

BruteForceReport brute_force_sS(const Mdp& mdp, double alpha, double tol) {
    const std::size_t n = mdp.size();
    if (n > brute_force_max_states)
        throw ConfigError("grid too large for exhaustive oracle (" + std::to_string(n) + " > " +
                          std::to_string(brute_force_max_states) + " points)");
    const auto report = discounted_sS(mdp, alpha, tol);
    if (!report.policy)
        throw VerificationError("brute-force-sS: no (s,S) policy extracted: " + report.explanation);

    BruteForceReport out;
    out.extracted = *report.policy;
    out.slope_condition = slope_condition(mdp.model).holds;
    const double eval_tol = 1e-10;
    const auto reference = policy_evaluation_post(mdp, out.extracted.post_levels(mdp.grid()), alpha, eval_tol);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t S = 0; S < n; ++S)
        for (std::size_t s = 0; s <= S; ++s)
            pairs.emplace_back(s, S);
    out.pairs = pairs.size();

    struct Worst {
        double gap;
        std::size_t pair, state;
    };
    std::vector<Worst> worst(pairs.size());
    const auto m = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t k = 0; k < m; ++k) {
        const auto [s, S] = pairs[k];
        std::vector<std::size_t> post(n);
        for (std::size_t i = 0; i < n; ++i)
            post[i] = i < s ? S : i;
        const auto v = policy_evaluation_post(mdp, post, alpha, eval_tol, kernels::Exec::serial);
        Worst w{-std::numeric_limits<double>::infinity(), static_cast<std::size_t>(k), 0};
        for (std::size_t i = 0; i < n; ++i) {
            const double gap = reference[i] - v[i];
            if (gap > w.gap)
                w = {gap, static_cast<std::size_t>(k), i};
        }
        worst[k] = w;
    }
    Worst best = worst.front();
    for (const auto& w : worst)
        if (w.gap > best.gap)
            best = w;
    out.worst_gap = best.gap;
    out.worst_s_index = pairs[best.pair].first;
    out.worst_S_index = pairs[best.pair].second;
    out.worst_state = best.state;
    return out;
}

SuiteResult sandwich_suite(const Mdp& mdp, double alpha, std::size_t horizon, double tol) {
    if (horizon < 1)
        throw ConfigError("sandwich: horizon must be >= 1");
    SuiteResult r{"sandwich"};
    const double exact = 1e-9;

    const auto plain = solve_finite(mdp, horizon, TerminalValue::zero(mdp.size()), alpha);
    double mono = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t + 1 < plain.size(); ++t)
        mono = std::max(mono, max_excess(plain[t].value.values, plain[t + 1].value.values));
    r.checks.push_back(at_most("v_t nondecreasing in t (F=0)", mono, exact));

    SolveOptions opts;
    opts.tol = tol;
    const auto inf = solve_infinite(mdp, alpha, opts);
    const auto fh = finite_horizon_sS(mdp, alpha, horizon, tol);

    double lower = -std::numeric_limits<double>::infinity();
    double upper = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t <= horizon; ++t) {
        lower = std::max(lower, max_excess(plain[t].value.values, fh.stages[t].value.values));
        upper = std::max(upper, max_excess(fh.stages[t].value.values, inf.value.values));
    }
    r.checks.push_back(at_most("v_t <= v_{t,F} (F=v0_alpha)", lower, exact));
    r.checks.push_back(at_most("v_{t,F} <= v_alpha + tol", upper, tol));

    const std::size_t from = first_unextrapolated(mdp);
    const auto G_alpha = build_G(mdp, inf.value, alpha, GKind::infinite, consistency_tol_for(inf));
    double g0 = max_excess(fh.zero.G0.values, fh.G.front().values, from);
    double chain = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t + 1 < fh.G.size(); ++t)
        chain = std::max(chain, max_excess(fh.G[t].values, fh.G[t + 1].values, from));
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& g : fh.G)
        top = std::max(top, max_excess(g.values, G_alpha.values, from));
    r.checks.push_back(at_most("G0_alpha <= G_{0,F}", g0, exact));
    if (fh.G.size() > 1)
        r.checks.push_back(at_most("G_{t,F} <= G_{t+1,F}", chain, exact));
    r.checks.push_back(at_most("G_{t,F} <= G_alpha + tol", top, tol));

    r.details["alpha"] = alpha;
    r.details["horizon"] = horizon;
    r.details["tol"] = tol;
    r.details["G_states_compared"] = mdp.size() - from;
    return r;
}

SuiteResult action_convergence_suite(const Mdp& mdp, double alpha, std::size_t horizon, double tol) {
    SuiteResult r{"action-convergence"};
    SolveOptions opts;
    opts.tol = tol;
    const auto inf = solve_infinite(mdp, alpha, opts);
    const auto zero = solve_zero_setup(mdp, alpha, tol);
    const TerminalValue terminals[] = {TerminalValue::zero(mdp.size()), zero.terminal()};
    for (const auto& F : terminals) {
        const auto ac = track_action_convergence(mdp, alpha, F, horizon, inf);
        std::size_t latest = 0;
        for (const auto& t : ac.settle_time)
            if (t)
                latest = std::max(latest, *t);
        const std::string tag = "F=" + to_string(F.id);
        r.checks.push_back({"all states settle by t=" + std::to_string(horizon) + " (" + tag + ")", ac.settled(),
                            static_cast<double>(ac.unsettled.size()), 0.0,
                            "latest settle time " + std::to_string(latest)});
        r.checks.push_back({"finite-horizon actions inside bound sets (" + tag + ")", ac.bound_set_containment,
                            ac.bound_set_containment ? 0.0 : 1.0, 0.0, ""});
        r.details[tag] = {{"unsettled", ac.unsettled.size()}, {"latest_settle_time", latest}};
    }
    r.details["alpha"] = alpha;
    r.details["horizon"] = horizon;
    return r;
}

SuiteResult brute_force_suite(const Mdp& mdp, double alpha, double tol) {
    SuiteResult r{"brute-force-sS"};
    const auto b = brute_force_sS(mdp, alpha, tol);
    const Grid& g = mdp.grid();
    r.checks.push_back(at_most("no (s,S) pair beats the extracted policy", b.worst_gap, 1e-6,
                               "worst pair s=" + std::to_string(g.at(b.worst_s_index)) +
                                   " S=" + std::to_string(g.at(b.worst_S_index)) +
                                   " at x=" + std::to_string(g.at(b.worst_state))));
    r.details["alpha"] = alpha;
    r.details["s"] = b.extracted.s;
    r.details["S"] = b.extracted.S;
    r.details["pairs"] = b.pairs;
    r.details["worst_gap"] = b.worst_gap;
    r.details["slope_condition"] = b.slope_condition;
    return r;
}

SuiteResult renewal_suite(const InventoryModel& model, double x, double y, std::size_t n_paths, std::uint64_t seed) {
    SuiteResult r{"renewal"};
    if (model.demand().positive_mass() == 0.0) {
        r.skipped = true;
        r.details["reason"] = "renewal process degenerate: P(D > 0) = 0";
        return r;
    }
    const auto sample = sample_renewal(model.demand(), y, n_paths, seed);
    const auto w = wald_check(sample, model.demand());
    const auto o = overshoot_bound_check(model, x, y, n_paths, seed);
    r.checks.push_back({"Wald identity |z| <= 4", w.pass(), std::abs(w.z), 4.0, ""});
    r.checks.push_back({"overshoot bound lhs <= rhs + 3 SE", o.pass(), o.lhs, o.rhs + 3.0 * o.lhs_se, ""});
    r.details["x"] = x;
    r.details["y"] = y;
    r.details["n_paths"] = n_paths;
    r.details["seed"] = seed;
    r.details["mean_N"] = sample.mean_N();
    r.details["wald"] = {{"lhs", w.lhs}, {"rhs", w.rhs}, {"z", w.z}};
    r.details["overshoot"] = {{"lhs", o.lhs}, {"rhs", o.rhs}, {"margin", o.margin}};
    return r;
}

} // namespace ssdp::verify
