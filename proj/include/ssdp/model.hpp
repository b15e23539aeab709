#pragma once

#include "ssdp/demand.hpp"
#include "ssdp/grid.hpp"
#include "ssdp/piecewise_linear.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ssdp {

/// Periodic-review inventory model with backorders: setup cost K, unit cost
/// c_bar, convex holding/backorder cost h and i.i.d. demand, on a grid.
class InventoryModel {
public:
    /// Validates the inputs. When h(0) != 0 or 0 is not a minimizer of h, the
    /// state variable is recentred at the leftmost minimizer x* of h: h is
    /// replaced by h(x + x*) - h(x*) and the grid is shifted by -x*.
    InventoryModel(double K, double c_bar, PiecewiseLinear h, DemandDistribution demand, Grid grid);

    double K() const noexcept { return K_; }
    double c_bar() const noexcept { return c_bar_; }
    const PiecewiseLinear& h() const noexcept { return h_; }
    const DemandDistribution& demand() const noexcept { return demand_; }
    const Grid& grid() const noexcept { return grid_; }

    /// Applied recentring x* (0 when h was already normalized) and the removed
    /// constant h(x*).
    double x_shift() const noexcept { return x_shift_; }
    double h_offset() const noexcept { return h_offset_; }

    /// h(x) > 0 for x < 0 and h -> infinity in both directions. False for
    /// degenerate stubs such as h = 0, which are accepted.
    bool h_coercive() const noexcept { return h_coercive_; }

    /// Same model with a different setup cost.
    InventoryModel with_K(double K) const;
    InventoryModel with_c_bar(double c_bar) const;
    InventoryModel with_grid(Grid grid) const;

private:
    double K_;
    double c_bar_;
    PiecewiseLinear h_;
    DemandDistribution demand_;
    Grid grid_;
    double x_shift_ = 0.0;
    double h_offset_ = 0.0;
    bool h_coercive_ = false;
};

/// Convexity of h on every consecutive grid triple:
/// h(x) <= (h(x - step) + h(x + step))/2 + 1e-12.
bool h_convex_on_grid(const PiecewiseLinear& h, const Grid& grid);

/// One-step cost c(x, a) = K 1{a > 0} + c_bar a + E h(x + a - D) for grid
/// state i and post-order level j >= i (a = x_j - x_i). h is evaluated at the
/// exact level x + a - d, even when that level is off the grid.
class CostTable {
public:
    explicit CostTable(const InventoryModel& model);

    std::size_t size() const noexcept { return expected_holding_.size(); }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        return order_cost(i, j) + expected_holding_[j];
    }
    double order_cost(std::size_t i, std::size_t j) const noexcept {
        return j == i ? 0.0 : K_ + c_bar_ * (static_cast<double>(j - i) * step_);
    }
    /// E h(y - D) at grid level y_j.
    std::span<const double> expected_holding() const noexcept { return expected_holding_; }

private:
    double K_;
    double c_bar_;
    double step_;
    std::vector<double> expected_holding_;
};

CostTable build_cost(const InventoryModel& model);

/// E h(y - D) at an arbitrary level y, summed in atom order.
double expected_holding(const InventoryModel& model, double y);

/// Transition law of the next state x' = x + a - D given the post-order level
/// y = x + a. Off-lattice levels split their mass linearly between the two
/// neighbouring grid points; levels below x_lo clamp to x_lo and are counted.
class Kernel {
public:
    struct Transition {
        std::size_t target;
        double prob;
    };

    explicit Kernel(const InventoryModel& model);

    std::size_t size() const noexcept { return offsets_.size() - 1; }
    std::span<const Transition> row(std::size_t post_level) const noexcept {
        return {entries_.data() + offsets_[post_level], offsets_[post_level + 1] - offsets_[post_level]};
    }
    /// Number of (post-order level, demand atom) pairs whose next state was clamped.
    std::size_t clamp_events() const noexcept { return clamp_events_; }
    bool row_clamps(std::size_t post_level) const noexcept { return clamped_rows_[post_level] != 0; }

    double row_sum(std::size_t post_level) const noexcept;

private:
    std::vector<Transition> entries_;
    std::vector<std::size_t> offsets_;
    std::vector<char> clamped_rows_;
    std::size_t clamp_events_ = 0;
};

/// Model plus its precomputed cost table and kernel; what every solver consumes.
struct Mdp {
    explicit Mdp(InventoryModel m) : model(std::move(m)), cost(model), kernel(model) {}

    const Grid& grid() const noexcept { return model.grid(); }
    std::size_t size() const noexcept { return model.grid().size(); }

    InventoryModel model;
    CostTable cost;
    Kernel kernel;
};

} // namespace ssdp
