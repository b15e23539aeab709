#pragma once

#include "ssdp/demand.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ssdp {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream for path `index` of a run seeded with `seed`; the same
/// (seed, index) always yields the same stream, whatever thread runs it.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t index) : engine_(splitmix64(seed ^ splitmix64(index))) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// Inverse-CDF sampling over the atoms of a demand table.
class DemandSampler {
public:
    explicit DemandSampler(const DemandDistribution& d);
    double operator()(PathRng& rng) const noexcept;

private:
    std::vector<double> values_;
    std::vector<double> cumulative_;
};

} // namespace ssdp
