#include "ssdp/kernels.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ssdp::kernels {

namespace {

inline double row_expectation(const Kernel& kernel, std::span<const double> v, std::size_t j) {
    double s = 0.0;
    for (const auto& t : kernel.row(j))
        s += t.prob * v[t.target];
    return s;
}

inline double state_min(const CostTable& cost, std::span<const double> ev, double alpha, std::size_t i,
                        std::size_t n) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = i; j < n; ++j) {
        const double q = cost(i, j) + alpha * ev[j];
        if (q < best)
            best = q;
    }
    return best;
}

inline void state_bellman(const CostTable& cost, std::span<const double> ev, double alpha, double eps,
                          std::size_t i, std::span<double> out, std::span<std::size_t> chosen,
                          std::vector<std::vector<std::size_t>>* sets) {
    const std::size_t n = cost.size();
    const double best = state_min(cost, ev, alpha, i, n);
    out[i] = best;
    bool first = true;
    if (sets)
        (*sets)[i].clear();
    for (std::size_t j = i; j < n; ++j) {
        const double q = cost(i, j) + alpha * ev[j];
        if (q <= best + eps) {
            if (first) {
                chosen[i] = j - i;
                first = false;
                if (!sets)
                    return;
            }
            (*sets)[i].push_back(j - i);
        }
    }
}

inline bool worse(const TripleViolation& a, const TripleViolation& b) {
    // true when a should replace b as the reported worst triple
    if (a.violation != b.violation)
        return a.violation > b.violation;
    if (a.lo != b.lo)
        return a.lo < b.lo;
    if (a.mid != b.mid)
        return a.mid < b.mid;
    return a.hi < b.hi;
}

TripleViolation scan_outer(std::span<const double> xs, std::span<const double> g, double K, std::size_t lo) {
    TripleViolation best{-std::numeric_limits<double>::infinity()};
    const std::size_t n = g.size();
    for (std::size_t mid = lo + 1; mid + 1 < n; ++mid) {
        for (std::size_t hi = mid + 1; hi < n; ++hi) {
            const double lambda = (xs[mid] - xs[lo]) / (xs[hi] - xs[lo]);
            const double rhs = (1.0 - lambda) * g[lo] + lambda * g[hi] + lambda * K;
            const TripleViolation cand{g[mid] - rhs, lo, mid, hi};
            if (worse(cand, best))
                best = cand;
        }
    }
    return best;
}

} // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void expected_next(const Kernel& kernel, std::span<const double> v, std::span<double> ev, Exec exec) {
    const auto n = static_cast<std::ptrdiff_t>(kernel.size());
    if (exec == Exec::serial) {
        for (std::ptrdiff_t j = 0; j < n; ++j)
            ev[j] = row_expectation(kernel, v, static_cast<std::size_t>(j));
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j)
        ev[j] = row_expectation(kernel, v, static_cast<std::size_t>(j));
}

void bellman_minimize(const CostTable& cost, std::span<const double> ev, double alpha, double eps,
                      std::span<double> out, std::span<std::size_t> chosen,
                      std::vector<std::vector<std::size_t>>* sets, Exec exec) {
    const auto n = static_cast<std::ptrdiff_t>(cost.size());
    if (sets)
        sets->resize(cost.size());
    if (exec == Exec::serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            state_bellman(cost, ev, alpha, eps, static_cast<std::size_t>(i), out, chosen, sets);
        return;
    }
    // Rows shrink with i, so hand out states dynamically.
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        state_bellman(cost, ev, alpha, eps, static_cast<std::size_t>(i), out, chosen, sets);
}

void policy_apply(const CostTable& cost, std::span<const std::size_t> post, std::span<const double> ev,
                  double alpha, std::span<double> out, Exec exec) {
    const auto n = static_cast<std::ptrdiff_t>(cost.size());
    if (exec == Exec::serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto j = post[i];
            out[i] = cost(static_cast<std::size_t>(i), j) + alpha * ev[j];
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto j = post[i];
        out[i] = cost(static_cast<std::size_t>(i), j) + alpha * ev[j];
    }
}

TripleViolation k_convex_scan(std::span<const double> xs, std::span<const double> g, double K, Exec exec) {
    const std::size_t n = g.size();
    TripleViolation best{-std::numeric_limits<double>::infinity()};
    if (n < 3)
        return best;
    std::vector<TripleViolation> per_lo(n - 2);
    const auto m = static_cast<std::ptrdiff_t>(n - 2);
    if (exec == Exec::serial) {
        for (std::ptrdiff_t lo = 0; lo < m; ++lo)
            per_lo[lo] = scan_outer(xs, g, K, static_cast<std::size_t>(lo));
    } else {
#pragma omp parallel for schedule(dynamic, 4)
        for (std::ptrdiff_t lo = 0; lo < m; ++lo)
            per_lo[lo] = scan_outer(xs, g, K, static_cast<std::size_t>(lo));
    }
    for (const auto& t : per_lo)
        if (worse(t, best))
            best = t;
    return best;
}

TripleViolation k_convex_scan_consecutive(std::span<const double> xs, std::span<const double> g, double K) {
    TripleViolation best{-std::numeric_limits<double>::infinity()};
    for (std::size_t mid = 1; mid + 1 < g.size(); ++mid) {
        const double lambda = (xs[mid] - xs[mid - 1]) / (xs[mid + 1] - xs[mid - 1]);
        const double rhs = (1.0 - lambda) * g[mid - 1] + lambda * g[mid + 1] + lambda * K;
        const TripleViolation cand{g[mid] - rhs, mid - 1, mid, mid + 1};
        if (worse(cand, best))
            best = cand;
    }
    return best;
}

} // namespace ssdp::kernels
