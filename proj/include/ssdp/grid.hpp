#pragma once

#include <cstddef>
#include <optional>

namespace ssdp {

/// Uniform 1-D lattice of inventory levels x_lo, x_lo + step, ..., x_hi.
class Grid {
public:
    /// Single point at 0.
    Grid() = default;
    Grid(double x_lo, double x_hi, double step, bool integer_mode = false);

    double x_lo() const noexcept { return x_lo_; }
    double x_hi() const noexcept { return x_hi_; }
    double step() const noexcept { return step_; }
    bool integer_mode() const noexcept { return integer_mode_; }
    std::size_t size() const noexcept { return n_; }

    double at(std::size_t i) const noexcept { return x_lo_ + static_cast<double>(i) * step_; }

    /// Index of an exact lattice point (relative tolerance 1e-9 of step).
    std::optional<std::size_t> index_of(double x) const noexcept;

    /// Position of an arbitrary level relative to the lattice. Levels outside
    /// [x_lo, x_hi] are clamped to the nearest edge and flagged.
    struct Bracket {
        std::size_t lo;
        double weight_hi; // mass placed on lo + 1; zero when x sits on a lattice point
        bool clamped;
    };
    Bracket locate(double x) const noexcept;

    Grid shifted(double dx) const { return Grid(x_lo_ + dx, x_hi_ + dx, step_, integer_mode_); }

    bool operator==(const Grid&) const = default;

private:
    double x_lo_ = 0.0;
    double x_hi_ = 0.0;
    double step_ = 1.0;
    bool integer_mode_ = false;
    std::size_t n_ = 1;
};

} // namespace ssdp
