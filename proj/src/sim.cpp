#include "ssdp/sim.hpp"

#include "ssdp/error.hpp"
#include "ssdp/rng.hpp"

#include <algorithm>
#include <cmath>

namespace ssdp {

double order_quantity(const SimPolicy& policy, double x) {
    struct Visitor {
        double x;
        double operator()(const SsPolicy& p) const { return p.order_quantity(x); }
        double operator()(const NeverOrder&) const { return 0.0; }
        double operator()(const OrderUpTo& p) const { return std::max(0.0, p.level - x); }
        double operator()(const PolicyTable& p) const {
            const Grid& g = p.grid;
            if (x > g.x_hi())
                return 0.0;
            std::size_t i = 0;
            if (x > g.x_lo())
                i = std::min<std::size_t>(static_cast<std::size_t>(std::lround((x - g.x_lo()) / g.step())),
                                          g.size() - 1);
            if (p.chosen[i] == 0)
                return 0.0;
            return std::max(0.0, g.at(p.post_level(i)) - x);
        }
    };
    return std::visit(Visitor{x}, policy);
}

std::string to_string(Criterion c) { return c == Criterion::discounted ? "discounted" : "average"; }

namespace {

struct PathResult {
    double value;     // discounted sum or post-burn-in average
    double max_cost;
};

double step_cost(const InventoryModel& m, double x, double a) {
    return (a > 0 ? m.K() : 0.0) + m.c_bar() * a + expected_holding(m, x + a);
}

PathResult run_path(const InventoryModel& m, const DemandSampler& draw, const SimPolicy& policy, const SimConfig& cfg,
                    Criterion crit, std::size_t burn_in, std::size_t index) {
    PathRng rng(cfg.seed, index);
    double x = cfg.x0;
    double total = 0.0;
    double discount = 1.0;
    double max_cost = 0.0;
    const double alpha = cfg.alpha.value_or(1.0);
    for (std::size_t t = 0; t < cfg.horizon; ++t) {
        const double a = order_quantity(policy, x);
        const double c = step_cost(m, x, a);
        max_cost = std::max(max_cost, c);
        if (crit == Criterion::discounted) {
            total += discount * c;
            discount *= alpha;
        } else if (t >= burn_in) {
            total += c;
        }
        x = x + a - draw(rng);
    }
    if (crit == Criterion::average)
        total /= static_cast<double>(cfg.horizon - burn_in);
    return {total, max_cost};
}

void validate(const SimConfig& cfg, Criterion crit) {
    if (cfg.horizon < 1)
        throw ConfigError("simulation: horizon must be >= 1");
    if (cfg.n_paths < 1)
        throw ConfigError("simulation: n_paths must be >= 1");
    if (crit == Criterion::discounted) {
        if (!cfg.alpha || !(*cfg.alpha >= 0.0 && *cfg.alpha < 1.0))
            throw ConfigError("alpha must lie in [0,1)");
    } else if (cfg.horizon < 1000) {
        throw ConfigError("simulate_average: horizon must be >= 1000");
    }
}

std::vector<PathResult> run_paths(const InventoryModel& m, const SimPolicy& policy, const SimConfig& cfg,
                                  Criterion crit, std::size_t burn_in, kernels::Exec exec) {
    const DemandSampler draw(m.demand());
    std::vector<PathResult> out(cfg.n_paths);
    const auto n = static_cast<std::ptrdiff_t>(cfg.n_paths);
    if (exec == kernels::Exec::serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            out[i] = run_path(m, draw, policy, cfg, crit, burn_in, static_cast<std::size_t>(i));
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            out[i] = run_path(m, draw, policy, cfg, crit, burn_in, static_cast<std::size_t>(i));
    }
    return out;
}

std::pair<double, double> mean_se(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs)
        s += x;
    const double mean = s / static_cast<double>(xs.size());
    if (xs.size() < 2)
        return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs)
        ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()))};
}

SimEstimate summarize(const std::vector<PathResult>& paths, const SimConfig& cfg, Criterion crit,
                      std::size_t burn_in) {
    std::vector<double> values(paths.size());
    double ceiling = 0.0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        values[i] = paths[i].value;
        ceiling = std::max(ceiling, paths[i].max_cost);
    }
    const auto [mean, se] = mean_se(values);
    SimEstimate e{mean, se, burn_in, 0.0, cfg.n_paths, cfg.horizon};
    if (crit == Criterion::discounted) {
        const double alpha = *cfg.alpha;
        e.bias_bound = std::pow(alpha, static_cast<double>(cfg.horizon)) * ceiling / (1.0 - alpha);
    }
    return e;
}

} // namespace

SimEstimate simulate_discounted(const InventoryModel& model, const SimConfig& cfg, kernels::Exec exec) {
    validate(cfg, Criterion::discounted);
    return summarize(run_paths(model, cfg.policy, cfg, Criterion::discounted, 0, exec), cfg, Criterion::discounted, 0);
}

SimEstimate simulate_average(const InventoryModel& model, const SimConfig& cfg, kernels::Exec exec) {
    validate(cfg, Criterion::average);
    const std::size_t burn_in = cfg.horizon / 10;
    return summarize(run_paths(model, cfg.policy, cfg, Criterion::average, burn_in, exec), cfg, Criterion::average,
                     burn_in);
}

std::vector<PolicyComparisonRow> compare_policies(const InventoryModel& model,
                                                  const std::vector<std::pair<std::string, SimPolicy>>& policies,
                                                  const SimConfig& cfg, kernels::Exec exec) {
    if (policies.size() < 2)
        throw ConfigError("compare_policies: at least two policies required");
    const Criterion crit = cfg.alpha ? Criterion::discounted : Criterion::average;
    validate(cfg, crit);
    const std::size_t burn_in = crit == Criterion::average ? cfg.horizon / 10 : 0;

    std::vector<std::vector<PathResult>> runs;
    for (const auto& [id, policy] : policies)
        runs.push_back(run_paths(model, policy, cfg, crit, burn_in, exec));

    std::vector<PolicyComparisonRow> rows;
    for (std::size_t k = 0; k < policies.size(); ++k) {
        std::vector<double> values(cfg.n_paths), diffs(cfg.n_paths);
        for (std::size_t i = 0; i < cfg.n_paths; ++i) {
            values[i] = runs[k][i].value;
            diffs[i] = runs[k][i].value - runs[0][i].value;
        }
        const auto [mean, se] = mean_se(values);
        const auto [dmean, dse] = mean_se(diffs);
        rows.push_back({policies[k].first, crit, mean, se, dmean, dse});
    }
    return rows;
}

} // namespace ssdp
