#include "ssdp/grid.hpp"

#include "ssdp/error.hpp"

#include <cmath>
#include <string>

namespace ssdp {

namespace {
constexpr double lattice_tol = 1e-9;

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }
} // namespace

Grid::Grid(double x_lo, double x_hi, double step, bool integer_mode)
    : x_lo_(x_lo), x_hi_(x_hi), step_(step), integer_mode_(integer_mode), n_(0) {
    if (!std::isfinite(x_lo) || !std::isfinite(x_hi) || !(x_lo < x_hi))
        throw ConfigError("grid: x_lo < x_hi required");
    if (!(step > 0) || !std::isfinite(step))
        throw ConfigError("grid: step must be positive");
    const double span = (x_hi - x_lo) / step;
    const double rounded = std::round(span);
    if (std::abs(span - rounded) > lattice_tol * std::max(1.0, rounded))
        throw ConfigError("grid: (x_hi - x_lo)/step must be an integer");
    if (integer_mode && (step != 1.0 || !is_integer(x_lo) || !is_integer(x_hi)))
        throw ConfigError("grid: integer_mode requires step = 1 and integer endpoints");
    n_ = static_cast<std::size_t>(rounded) + 1;
}

std::optional<std::size_t> Grid::index_of(double x) const noexcept {
    const double pos = (x - x_lo_) / step_;
    const double r = std::round(pos);
    if (std::abs(pos - r) > lattice_tol || r < 0 || r > static_cast<double>(n_ - 1))
        return std::nullopt;
    return static_cast<std::size_t>(r);
}

Grid::Bracket Grid::locate(double x) const noexcept {
    if (x <= x_lo_)
        return {0, 0.0, x < x_lo_ - lattice_tol * step_};
    if (x >= x_hi_)
        return {n_ - 1, 0.0, x > x_hi_ + lattice_tol * step_};
    const double pos = (x - x_lo_) / step_;
    const double r = std::round(pos);
    if (std::abs(pos - r) <= lattice_tol)
        return {static_cast<std::size_t>(r), 0.0, false};
    const double fl = std::floor(pos);
    return {static_cast<std::size_t>(fl), pos - fl, false};
}

} // namespace ssdp
