#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ssdp {

/// Continuous piecewise-linear function through sorted breakpoints, extended
/// linearly beyond the outermost breakpoints with the end slopes.
class PiecewiseLinear {
public:
    struct Point {
        double x;
        double y;
    };

    explicit PiecewiseLinear(std::vector<Point> points);

    /// Breakpoints at n equally spaced abscissae in [lo, hi].
    static PiecewiseLinear sample(const std::function<double(double)>& f, double lo, double hi,
                                  std::size_t n);
    static PiecewiseLinear zero();

    double operator()(double x) const noexcept;

    std::span<const Point> points() const noexcept { return points_; }
    double left_slope() const noexcept;
    double right_slope() const noexcept;

    /// Segment slopes are nondecreasing (up to tol).
    bool is_convex(double tol = 1e-12) const noexcept;

    double min_value() const noexcept;
    /// Leftmost abscissa where min_value() is attained; only meaningful when
    /// left_slope() < 0.
    double leftmost_minimizer() const noexcept;

    /// x -> f(x + dx) + dy
    PiecewiseLinear shifted(double dx, double dy) const;

private:
    std::vector<Point> points_;
};

} // namespace ssdp
