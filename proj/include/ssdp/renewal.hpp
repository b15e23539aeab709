#pragma once

#include "ssdp/demand.hpp"
#include "ssdp/kernels.hpp"
#include "ssdp/model.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ssdp {

struct RenewalPath {
    std::size_t N = 0;          // N(y) = sup{n : S_n <= y}
    double S_N = 0.0;           // S_{N(y)}
    double S_N_plus_1 = 0.0;    // first partial sum exceeding y
    double overshoot = 0.0;     // R(y) = S_{N(y)+1} - y
};

struct RenewalSample {
    std::uint64_t seed = 0;
    std::size_t n_paths = 0;
    double y = 0.0;
    std::vector<RenewalPath> paths;

    double mean_N() const noexcept;
};

/// Demand partial sums along n_paths independent paths until they exceed y.
/// Throws ConfigError("renewal process degenerate") when P(D > 0) = 0.
RenewalSample sample_renewal(const DemandDistribution& demand, double y, std::size_t n_paths, std::uint64_t seed,
                             kernels::Exec exec = kernels::Exec::parallel);

struct WaldCheck {
    double lhs = 0.0; // mean of S_{N(y)+1}
    double rhs = 0.0; // (mean of N(y) + 1) E D
    double z = 0.0;   // studentized per-path difference
    bool conclusive = false;
    bool pass() const noexcept;
};

WaldCheck wald_check(const RenewalSample& sample, const DemandDistribution& demand);

struct OvershootCheck {
    double lhs = 0.0;    // estimate of E h*(x - S_{N(y)+1})
    double lhs_se = 0.0;
    double rhs = 0.0;    // (1 + E N(y)) E h*(x - y - D), E N(y) empirical
    double margin = 0.0; // rhs + 3 SE - lhs
    double mean_N = 0.0;
    bool pass() const noexcept { return margin >= 0.0; }
};

/// h*(z) = h(z) for z <= 0 and 0 otherwise.
double h_star(const InventoryModel& model, double z);

OvershootCheck overshoot_bound_check(const InventoryModel& model, double x, double y, std::size_t n_paths,
                                     std::uint64_t seed, kernels::Exec exec = kernels::Exec::parallel);

} // namespace ssdp
