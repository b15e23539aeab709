// ssdp: command-line front end. Subcommands solve, sweep and verify read a
// JSON model config and write CSV/JSON artifacts plus manifest.json into --out.

#include "ssdp/average_policy.hpp"
#include "ssdp/avg_cost.hpp"
#include "ssdp/config.hpp"
#include "ssdp/dp.hpp"
#include "ssdp/error.hpp"
#include "ssdp/inventory_policy.hpp"
#include "ssdp/io.hpp"
#include "ssdp/sim.hpp"
#include "ssdp/verify.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace ssdp;
using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t default_seed = 12345;

struct Common {
    std::string config;
    std::string out = "out";
    std::uint64_t seed = default_seed;
    std::optional<double> tol;
    int threads = 0;
};

struct Run {
    const Common& common;
    io::RunManifest manifest;
    fs::path dir;

    void emit(const std::string& name, const std::string& content) {
        io::write_file(dir / name, content);
        manifest.outputs.push_back(name);
    }
};

void require_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw ConfigError("alpha must lie in [0,1)");
}

std::string value_csv(const ValueTable& v, const PolicyTable& p) {
    io::CsvWriter csv({"x", "v", "chosen_action", "n_eps_optimal"});
    for (std::size_t i = 0; i < v.size(); ++i)
        csv.field(v.grid.at(i)).field(v[i]).field(p.action(i)).field(p.action_sets[i].size()).end_row();
    return csv.str();
}

struct ThresholdRow {
    std::string context;
    std::optional<SsPolicy> policy;
    double g_min;
    bool k_convex_ok;
    std::size_t extrapolation_count;
};

std::string thresholds_csv(const std::vector<ThresholdRow>& rows) {
    io::CsvWriter csv({"context", "s", "S", "g_min", "K_convex_ok", "extrapolation_count"});
    for (const auto& r : rows) {
        csv.field(r.context);
        if (r.policy)
            csv.field(r.policy->s).field(r.policy->S);
        else
            csv.empty().empty();
        csv.field(r.g_min).field(r.k_convex_ok).field(r.extrapolation_count).end_row();
    }
    return csv.str();
}

struct KConvexRow {
    std::string context;
    KConvexReport report;
};

std::string kconvex_csv(const std::vector<KConvexRow>& rows) {
    io::CsvWriter csv({"context", "K_convex_ok", "worst_violation", "x_lo", "x_mid", "x_hi"});
    for (const auto& r : rows)
        csv.field(r.context)
            .field(r.report.ok)
            .field(r.report.worst.violation)
            .field(r.report.x_lo)
            .field(r.report.x_mid)
            .field(r.report.x_hi)
            .end_row();
    return csv.str();
}

double min_of(const std::vector<double>& xs) { return *std::min_element(xs.begin(), xs.end()); }

std::string alpha_context(double alpha) { return "alpha=" + io::format_double(alpha); }

json model_summary(const ModelConfig& cfg) {
    const auto& m = cfg.model;
    return {{"name", cfg.name},
            {"grid_points", m.grid().size()},
            {"x_shift", m.x_shift()},
            {"h_offset", m.h_offset()},
            {"K", m.K()},
            {"c_bar", m.c_bar()},
            {"mean_demand", m.demand().mean()}};
}

// solve ---------------------------------------------------------------------

struct SolveArgs {
    double alpha = 0.9;
    std::optional<std::size_t> horizon;
    std::string terminal = "zero";
};

int cmd_solve(Run& run, const ModelConfig& cfg, const SolveArgs& a) {
    require_alpha(a.alpha);
    const double tol = run.common.tol.value_or(cfg.tol.value_or(1e-8));
    const Mdp mdp(cfg.model);
    const double K = mdp.model.K();
    auto& res = run.manifest.results;
    res["alpha"] = a.alpha;
    res["tol"] = tol;

    std::vector<ThresholdRow> thresholds;
    std::vector<KConvexRow> kconvex;
    bool all_k_convex = true;

    if (!a.horizon) {
        if (a.terminal != "zero")
            run.manifest.notes.push_back("--terminal is ignored without --horizon");
        const auto rep = discounted_sS(mdp, a.alpha, tol);
        run.emit("value.csv", value_csv(rep.solve.value, rep.solve.policy));
        json side = {{"alpha", a.alpha},
                     {"tol", tol},
                     {"iterations", rep.solve.iterations},
                     {"residual", rep.solve.residual},
                     {"clamp_events", rep.solve.clamp_events},
                     {"eps_act", cfg.eps_act}};
        run.emit("value.json", side.dump(2) + "\n");

        thresholds.push_back({alpha_context(a.alpha), rep.policy, min_of(rep.G.values), rep.kconvex.ok,
                              rep.G.extrapolation_count});
        kconvex.push_back({alpha_context(a.alpha), rep.kconvex});
        all_k_convex = rep.kconvex.ok;
        for (const auto& p : rep.sequence)
            thresholds.push_back(
                {"t=" + std::to_string(p.t), p.policy, std::numeric_limits<double>::quiet_NaN(), p.k_convex_ok, 0});

        res["s"] = rep.policy ? json(rep.policy->s) : json(nullptr);
        res["S"] = rep.policy ? json(rep.policy->S) : json(nullptr);
        res["K_convex_ok"] = rep.kconvex.ok;
        res["policy_usable"] = rep.usability.usable();
        res["value_match"] = rep.value_match;
        res["max_evaluation_gap"] = rep.max_evaluation_gap;
        res["settle_t"] = rep.settle_t ? json(*rep.settle_t) : json(nullptr);
        res["slope_condition"] = slope_condition(mdp.model).holds;
        if (!rep.explanation.empty())
            run.manifest.notes.push_back(rep.explanation);
    } else {
        const std::size_t N = *a.horizon;
        if (N < 1)
            throw ConfigError("--horizon must be >= 1");
        TerminalValue F = TerminalValue::zero(mdp.size());
        if (a.terminal == "v0alpha")
            F = solve_zero_setup(mdp, a.alpha, tol).terminal();
        else if (a.terminal != "zero")
            throw ConfigError("--terminal must be zero or v0alpha");
        const auto stages = solve_finite(mdp, N, F, a.alpha, cfg.eps_act);
        run.emit("value.csv", value_csv(stages[N].value, *stages[N].policy));
        json side = {{"alpha", a.alpha}, {"horizon", N}, {"terminal", to_string(F.id)}, {"eps_act", cfg.eps_act}};
        run.emit("value.json", side.dump(2) + "\n");

        json epochs = json::array();
        for (std::size_t t = 0; t < N; ++t) {
            const std::size_t togo = N - t - 1;
            auto g = build_G(mdp, stages[togo].value, a.alpha, GKind::finite_t);
            g.t = togo;
            const auto kc = is_K_convex(g, K);
            std::optional<SsPolicy> p;
            try {
                p = extract_sS(g, K);
            } catch (const Error& e) {
                run.manifest.notes.push_back("t=" + std::to_string(t) + ": " + e.what());
            }
            all_k_convex = all_k_convex && kc.ok;
            thresholds.push_back({"t=" + std::to_string(t), p, min_of(g.values), kc.ok, g.extrapolation_count});
            kconvex.push_back({"t=" + std::to_string(t), kc});
            epochs.push_back({{"t", t},
                              {"s", p ? json(p->s) : json(nullptr)},
                              {"S", p ? json(p->S) : json(nullptr)},
                              {"K_convex_ok", kc.ok}});
        }
        res["horizon"] = N;
        res["terminal"] = to_string(F.id);
        res["epochs"] = epochs;
        res["s"] = epochs.front()["s"];
        res["S"] = epochs.front()["S"];
        res["K_convex_ok"] = all_k_convex;
    }
    run.emit("thresholds.csv", thresholds_csv(thresholds));
    run.emit("kconvex.csv", kconvex_csv(kconvex));
    run.manifest.verifications["K_convexity"] = all_k_convex ? "pass" : "fail";
    if (!all_k_convex)
        throw VerificationError("K-convexity of G failed (see kconvex.csv)");
    return 0;
}

// sweep ---------------------------------------------------------------------

struct SweepArgs {
    std::string schedule = "geometric:12";
};

std::string sweep_csv(const VanishingDiscountSweep& sw) {
    io::CsvWriter csv({"alpha", "m_alpha", "one_minus_alpha_times_m", "s", "S", "minimizer_lo", "minimizer_hi",
                       "solver_iters"});
    for (const auto& r : sw.records) {
        const Grid& g = r.u.grid;
        csv.field(r.alpha).field(r.m_alpha).field(r.one_minus_alpha_m);
        if (r.sS)
            csv.field(r.sS->s).field(r.sS->S);
        else
            csv.empty().empty();
        csv.field(g.at(r.minimizers.front())).field(g.at(r.minimizers.back())).field(r.solve.iterations).end_row();
    }
    return csv.str();
}

int cmd_sweep(Run& run, const ModelConfig& cfg, const SweepArgs& a) {
    const auto schedule = parse_schedule(a.schedule);
    for (double alpha : schedule)
        require_alpha(alpha);
    const double tol = run.common.tol.value_or(cfg.tol.value_or(default_sweep_tol));
    const Mdp mdp(cfg.model);
    auto& res = run.manifest.results;
    res["schedule"] = a.schedule;
    res["tol"] = tol;

    const auto rep = average_sS(mdp, schedule, tol, cfg.max_iterations);
    res["degenerate"] = rep.degenerate;
    res["s"] = rep.policy.s;
    res["S"] = rep.policy.S;
    res["settled"] = rep.settled;
    res["thresholds_bounded"] = rep.bounded;
    if (!rep.note.empty())
        run.manifest.notes.push_back(rep.note);

    // The degenerate case skips the sweep in average_sS; run it anyway for the
    // per-alpha diagnostics.
    std::optional<VanishingDiscountSweep> sw = rep.sweep;
    if (!sw)
        sw = ssdp::sweep(mdp, schedule, tol, cfg.max_iterations);
    for (const auto& w : sw->warnings)
        run.manifest.notes.push_back(w);
    for (const auto& r : sw->records)
        if (!r.note.empty())
            run.manifest.notes.push_back(alpha_context(r.alpha) + ": " + r.note);
    run.emit("sweep.csv", sweep_csv(*sw));
    res["w_estimate"] = sw->w_estimate;
    res["cauchy"] = sw->cauchy;
    res["partial"] = sw->partial;

    if (sw->records.size() >= 3) {
        const auto B = assumption_B_diagnostic(*sw);
        res["assumption_B"] = {{"bounded", B.bounded}, {"offending_states", B.offending.size()}};
        run.manifest.verifications["assumption_B"] = B.bounded ? "bounded" : "unbounded";
    } else {
        res["assumption_B"] = nullptr;
        run.manifest.verifications["assumption_B"] = "insufficient schedule";
    }

    if (rep.optimality) {
        const auto& oc = *rep.optimality;
        const auto& u = rep.relative->u;
        io::CsvWriter csv({"x", "u", "residual", "interior"});
        for (std::size_t i = 0; i < u.size(); ++i)
            csv.field(u.grid.at(i)).field(u[i]).field(oc.residual[i]).field(oc.interior[i] != 0).end_row();
        run.emit("optimality.csv", csv.str());
        res["optimality"] = {{"pass", oc.pass()},
                             {"max_interior_residual", oc.max_interior},
                             {"max_boundary_residual", oc.max_boundary},
                             {"slack", oc.slack},
                             {"failing_states", oc.failing.size()}};
        run.manifest.verifications["optimality_inequality"] =
            sw->records.size() < 3 ? "insufficient schedule" : (oc.pass() ? "pass" : "fail");
    }

    SimConfig sc;
    sc.x0 = 0.0;
    sc.horizon = 10000;
    sc.n_paths = 1000;
    sc.seed = run.common.seed;
    const auto rows = compare_policies(mdp.model, {{"sS_limit", rep.policy}, {"order_up_to_0", OrderUpTo{0.0}}}, sc);
    io::CsvWriter csv({"policy_id", "criterion", "mean", "std_error", "n_paths", "horizon", "seed"});
    for (const auto& r : rows)
        csv.field(r.policy_id)
            .field(to_string(r.criterion))
            .field(r.mean)
            .field(r.std_error)
            .field(sc.n_paths)
            .field(sc.horizon)
            .field(std::to_string(sc.seed))
            .end_row();
    run.emit("sim.csv", csv.str());
    res["simulated_average_cost"] = {{"mean", rows.front().mean}, {"std_error", rows.front().std_error}};

    if (sw->partial)
        throw ConvergenceError("sweep stopped early: " + sw->stop_reason);
    if (rep.optimality && !rep.optimality->pass() && sw->records.size() >= 3)
        throw VerificationError("optimality inequality violated at " + std::to_string(rep.optimality->failing.size()) +
                                " interior states");
    return 0;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "all";
    double alpha = 0.9;
    std::size_t horizon = 200;
};

int cmd_verify(Run& run, const ModelConfig& cfg, const VerifyArgs& a) {
    require_alpha(a.alpha);
    const std::vector<std::string> known = {"renewal", "sandwich", "action-convergence", "brute-force-sS"};
    std::vector<std::string> suites;
    if (a.suite == "all")
        suites = known;
    else if (std::find(known.begin(), known.end(), a.suite) != known.end())
        suites = {a.suite};
    else
        throw ConfigError("unknown suite '" + a.suite + "'");
    const double tol = run.common.tol.value_or(cfg.tol.value_or(1e-8));
    const Mdp mdp(cfg.model);
    if (std::find(suites.begin(), suites.end(), "brute-force-sS") != suites.end() &&
        mdp.size() > verify::brute_force_max_states)
        throw ConfigError("grid too large for exhaustive oracle (" + std::to_string(mdp.size()) + " points)");

    auto& res = run.manifest.results;
    res["alpha"] = a.alpha;
    res["horizon"] = a.horizon;
    res["tol"] = tol;
    res["slope_condition"] = slope_condition(mdp.model).holds;

    io::CsvWriter csv({"suite", "check", "pass", "measured", "threshold", "detail"});
    bool ok = true;
    for (const auto& name : suites) {
        verify::SuiteResult r;
        if (name == "renewal")
            r = verify::renewal_suite(mdp.model, 0.0, 4.0 * mdp.model.demand().mean(), 100000, run.common.seed);
        else if (name == "sandwich")
            r = verify::sandwich_suite(mdp, a.alpha, a.horizon, tol);
        else if (name == "action-convergence")
            r = verify::action_convergence_suite(mdp, a.alpha, a.horizon, tol);
        else
            r = verify::brute_force_suite(mdp, a.alpha, tol);
        for (const auto& c : r.checks)
            csv.field(r.suite).field(c.name).field(c.pass).field(c.measured).field(c.threshold).field(c.detail).end_row();
        if (name == "renewal")
            run.emit("renewal.json", r.details.dump(2) + "\n");
        const std::string verdict = r.skipped ? "skipped" : (r.pass() ? "pass" : "fail");
        run.manifest.verifications[r.suite] = verdict;
        res[r.suite] = r.details;
        std::cout << r.suite << ": " << verdict << "\n";
        for (const auto& c : r.checks)
            if (!c.pass)
                std::cout << "  FAIL " << c.name << ": measured " << io::format_double(c.measured) << " > "
                          << io::format_double(c.threshold) << "\n";
        ok = ok && r.pass();
    }
    run.emit("verify.csv", csv.str());
    if (!ok)
        throw VerificationError("verification failed (see verify.csv)");
    return 0;
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::convergence:
        return 3;
    case ErrorKind::verification:
        return 4;
    case ErrorKind::config:
        break;
    }
    return 2;
}

int execute(const std::string& command, const Common& common, const std::function<int(Run&, const ModelConfig&)>& body) {
    Run run{common};
    run.manifest.command = command;
    run.manifest.config_path = common.config;
    run.manifest.seed = common.seed;
    run.manifest.tool_version = SSDP_VERSION;
    run.manifest.started = io::utc_timestamp();
    run.dir = common.out;

    int code = 0;
    bool dir_ok = false;
    try {
        fs::create_directories(run.dir);
        dir_ok = true;
        if (common.threads > 0)
            omp_set_num_threads(common.threads);
        run.manifest.results["threads"] = omp_get_max_threads();
        const auto cfg = load_model_config(common.config);
        run.manifest.results["model"] = model_summary(cfg);
        code = body(run, cfg);
    } catch (const Error& e) {
        code = exit_code_for(e);
        run.manifest.error = e.what();
    } catch (const fs::filesystem_error& e) {
        code = 2;
        run.manifest.error = e.what();
    } catch (const std::exception& e) {
        code = 2;
        run.manifest.error = std::string("unexpected error: ") + e.what();
    }
    if (!run.manifest.error.empty())
        std::cerr << "error: " << run.manifest.error << "\n";
    run.manifest.exit_code = code;
    run.manifest.finished = io::utc_timestamp();
    if (dir_ok) {
        try {
            io::write_file(run.dir / "manifest.json", run.manifest.to_json().dump(2) + "\n");
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return code == 0 ? 2 : code;
        }
    }
    return code;
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("config", c.config, "model config (JSON)")->required();
    app->add_option("--out", c.out, "output directory")->capture_default_str();
    app->add_option("--seed", c.seed, "64-bit seed for all Monte-Carlo work")->capture_default_str();
    app->add_option("--tol", c.tol, "value-iteration tolerance");
    app->add_option("--threads", c.threads, "OpenMP worker count (default: runtime)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic inventory DP: discounted and average-cost (s,S) solvers"};
    app.require_subcommand(1);

    Common common;
    SolveArgs solve_args;
    SweepArgs sweep_args;
    VerifyArgs verify_args;

    auto* solve = app.add_subcommand("solve", "discounted value iteration, value/policy CSVs and (s,S) thresholds");
    add_common(solve, common);
    solve->add_option("--alpha", solve_args.alpha, "discount factor in [0,1)")->capture_default_str();
    solve->add_option("--horizon", solve_args.horizon, "finite horizon N (infinite horizon if omitted)");
    solve->add_option("--terminal", solve_args.terminal, "terminal value: zero | v0alpha")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "vanishing-discount sweep and average-cost (s,S) policy");
    add_common(sweep, common);
    sweep->add_option("--schedule", sweep_args.schedule, "geometric:<n> or a comma list of alphas")
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "invariant suites with pass/fail margins");
    add_common(verify, common);
    verify->add_option("--suite", verify_args.suite, "renewal | sandwich | action-convergence | brute-force-sS | all")
        ->capture_default_str();
    verify->add_option("--alpha", verify_args.alpha, "discount factor in [0,1)")->capture_default_str();
    verify->add_option("--horizon", verify_args.horizon, "finite horizon for sandwich / action-convergence")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*solve)
        return execute("solve", common, [&](Run& r, const ModelConfig& c) { return cmd_solve(r, c, solve_args); });
    if (*sweep)
        return execute("sweep", common, [&](Run& r, const ModelConfig& c) { return cmd_sweep(r, c, sweep_args); });
    return execute("verify", common, [&](Run& r, const ModelConfig& c) { return cmd_verify(r, c, verify_args); });
}
