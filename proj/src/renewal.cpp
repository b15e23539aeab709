#include "ssdp/renewal.hpp"

#include "ssdp/error.hpp"
#include "ssdp/rng.hpp"

#include <cmath>
#include <limits>

namespace ssdp {

double RenewalSample::mean_N() const noexcept {
    double s = 0.0;
    for (const auto& p : paths)
        s += static_cast<double>(p.N);
    return paths.empty() ? 0.0 : s / static_cast<double>(paths.size());
}

namespace {

RenewalPath one_path(const DemandSampler& draw, double y, std::uint64_t seed, std::size_t index) {
    PathRng rng(seed, index);
    RenewalPath p;
    double sum = 0.0;
    for (;;) {
        const double next = sum + draw(rng);
        if (next > y) {
            p.S_N = sum;
            p.S_N_plus_1 = next;
            p.overshoot = next - y;
            return p;
        }
        ++p.N;
        sum = next;
    }
}

struct MeanSe {
    double mean;
    double se;
};

template <class F>
MeanSe mean_and_se(std::size_t n, F&& value) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += value(i);
    const double mean = s / static_cast<double>(n);
    if (n < 2)
        return {mean, std::numeric_limits<double>::quiet_NaN()};
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = value(i) - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n))};
}

} // namespace

RenewalSample sample_renewal(const DemandDistribution& demand, double y, std::size_t n_paths, std::uint64_t seed,
                             kernels::Exec exec) {
    if (demand.positive_mass() == 0.0)
        throw ConfigError("renewal process degenerate: P(D > 0) = 0");
    if (n_paths == 0)
        throw ConfigError("sample_renewal: n_paths must be >= 1");
    const DemandSampler draw(demand);
    RenewalSample s{seed, n_paths, y, std::vector<RenewalPath>(n_paths)};
    const auto n = static_cast<std::ptrdiff_t>(n_paths);
    if (exec == kernels::Exec::serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            s.paths[i] = one_path(draw, y, seed, static_cast<std::size_t>(i));
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            s.paths[i] = one_path(draw, y, seed, static_cast<std::size_t>(i));
    }
    return s;
}

bool WaldCheck::pass() const noexcept { return conclusive && std::abs(z) <= 4.0; }

WaldCheck wald_check(const RenewalSample& sample, const DemandDistribution& demand) {
    if (sample.paths.empty())
        throw ConfigError("wald_check: empty sample");
    const double ed = demand.mean();
    const std::size_t n = sample.paths.size();
    WaldCheck w;
    const auto lhs = mean_and_se(n, [&](std::size_t i) { return sample.paths[i].S_N_plus_1; });
    w.lhs = lhs.mean;
    w.rhs = (sample.mean_N() + 1.0) * ed;
    const auto diff = mean_and_se(n, [&](std::size_t i) {
        const auto& p = sample.paths[i];
        return p.S_N_plus_1 - (static_cast<double>(p.N) + 1.0) * ed;
    });
    if (n < 2) {
        w.conclusive = false;
        w.z = std::numeric_limits<double>::quiet_NaN();
        return w;
    }
    w.conclusive = true;
    const double scale = 1e-12 * std::max(1.0, std::abs(w.lhs));
    if (diff.se <= scale)
        w.z = std::abs(diff.mean) <= scale ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff.mean);
    else
        w.z = diff.mean / diff.se;
    return w;
}

double h_star(const InventoryModel& model, double z) { return z <= 0.0 ? model.h()(z) : 0.0; }

OvershootCheck overshoot_bound_check(const InventoryModel& model, double x, double y, std::size_t n_paths,
                                     std::uint64_t seed, kernels::Exec exec) {
    if (y < 0)
        throw ConfigError("overshoot_bound_check: y must be >= 0");
    const auto sample = sample_renewal(model.demand(), y, n_paths, seed, exec);
    OvershootCheck c;
    const auto lhs = mean_and_se(sample.paths.size(),
                                 [&](std::size_t i) { return h_star(model, x - sample.paths[i].S_N_plus_1); });
    c.lhs = lhs.mean;
    c.lhs_se = std::isnan(lhs.se) ? 0.0 : lhs.se;
    c.mean_N = sample.mean_N();
    double eh = 0.0;
    for (const auto& a : model.demand().atoms())
        eh += a.prob * h_star(model, x - y - a.value);
    c.rhs = (1.0 + c.mean_N) * eh;
    c.margin = c.rhs + 3.0 * c.lhs_se - c.lhs;
    return c;
}

} // namespace ssdp
