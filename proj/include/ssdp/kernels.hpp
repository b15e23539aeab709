#pragma once

// Inner loops of the solvers. Every kernel has a serial reference and an
// OpenMP version with bitwise identical output; reductions combine in a fixed
// order.

#include "ssdp/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ssdp::kernels {

enum class Exec { serial, parallel };

/// ev[j] = sum_k p_k v[target_k] over the kernel row of post-order level j,
/// accumulated in demand-atom order.
void expected_next(const Kernel& kernel, std::span<const double> v, std::span<double> ev, Exec exec);

/// out[i] = min_{j >= i} c(i, j) + alpha ev[j]; chosen[i] is the smallest
/// order quantity (in grid steps) within eps of the minimum. When `sets` is
/// non-null it receives every such quantity.
void bellman_minimize(const CostTable& cost, std::span<const double> ev, double alpha, double eps,
                      std::span<double> out, std::span<std::size_t> chosen,
                      std::vector<std::vector<std::size_t>>* sets, Exec exec);

/// out[i] = c(i, post[i]) + alpha ev[post[i]]
void policy_apply(const CostTable& cost, std::span<const std::size_t> post, std::span<const double> ev,
                  double alpha, std::span<double> out, Exec exec);

struct TripleViolation {
    double violation; // g(m) - [(1-l) g(x) + l g(y) + l K], -inf when there are no triples
    std::size_t lo = 0;
    std::size_t mid = 0;
    std::size_t hi = 0;
};

/// Worst K-convexity violation over all index triples lo < mid < hi. Ties are
/// broken towards the lexicographically smallest triple.
TripleViolation k_convex_scan(std::span<const double> xs, std::span<const double> g, double K, Exec exec);

/// Consecutive triples (i-1, i, i+1) only; the O(n) prefilter of the full scan.
TripleViolation k_convex_scan_consecutive(std::span<const double> xs, std::span<const double> g, double K);

int max_threads();

} // namespace ssdp::kernels
