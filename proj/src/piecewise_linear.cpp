#include "ssdp/piecewise_linear.hpp"

#include "ssdp/error.hpp"

#include <algorithm>
#include <cmath>

namespace ssdp {

PiecewiseLinear::PiecewiseLinear(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.size() < 2)
        throw ConfigError("h: at least two breakpoints required");
    for (const auto& p : points_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw ConfigError("h: breakpoints must be finite");
    std::sort(points_.begin(), points_.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i].x > points_[i - 1].x))
            throw ConfigError("h: breakpoint abscissae must be distinct");
}

PiecewiseLinear PiecewiseLinear::sample(const std::function<double(double)>& f, double lo, double hi,
                                        std::size_t n) {
    if (n < 2 || !(lo < hi))
        throw ConfigError("h: sampling needs n >= 2 and lo < hi");
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        pts.push_back({x, f(x)});
    }
    return PiecewiseLinear(std::move(pts));
}

PiecewiseLinear PiecewiseLinear::zero() { return PiecewiseLinear({{-1.0, 0.0}, {1.0, 0.0}}); }

double PiecewiseLinear::operator()(double x) const noexcept {
    const auto& p = points_;
    if (x <= p.front().x)
        return p.front().y + left_slope() * (x - p.front().x);
    if (x >= p.back().x)
        return p.back().y + right_slope() * (x - p.back().x);
    auto it = std::upper_bound(p.begin(), p.end(), x, [](double v, const Point& q) { return v < q.x; });
    const Point& b = *it;
    const Point& a = *(it - 1);
    if (x == a.x)
        return a.y;
    const double t = (x - a.x) / (b.x - a.x);
    return a.y + t * (b.y - a.y);
}

double PiecewiseLinear::left_slope() const noexcept {
    return (points_[1].y - points_[0].y) / (points_[1].x - points_[0].x);
}

double PiecewiseLinear::right_slope() const noexcept {
    const auto n = points_.size();
    return (points_[n - 1].y - points_[n - 2].y) / (points_[n - 1].x - points_[n - 2].x);
}

bool PiecewiseLinear::is_convex(double tol) const noexcept {
    double prev = left_slope();
    for (std::size_t i = 2; i < points_.size(); ++i) {
        const double s = (points_[i].y - points_[i - 1].y) / (points_[i].x - points_[i - 1].x);
        if (s < prev - tol)
            return false;
        prev = s;
    }
    return true;
}

double PiecewiseLinear::min_value() const noexcept {
    double m = points_.front().y;
    for (const auto& p : points_)
        m = std::min(m, p.y);
    return m;
}

double PiecewiseLinear::leftmost_minimizer() const noexcept {
    const double m = min_value();
    for (const auto& p : points_)
        if (p.y == m)
            return p.x;
    return points_.front().x;
}

PiecewiseLinear PiecewiseLinear::shifted(double dx, double dy) const {
    std::vector<Point> pts;
    pts.reserve(points_.size());
    for (const auto& p : points_)
        pts.push_back({p.x - dx, p.y + dy});
    return PiecewiseLinear(std::move(pts));
}

} // namespace ssdp
