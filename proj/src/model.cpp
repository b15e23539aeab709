#include "ssdp/model.hpp"

#include "ssdp/error.hpp"

#include <cmath>

namespace ssdp {

namespace {

Grid recentred_grid(const Grid& g, double x_shift) {
    if (x_shift == 0.0)
        return g;
    if (g.integer_mode() && x_shift != std::floor(x_shift))
        throw ConfigError("h: minimizer of h is not an integer, cannot recentre an integer grid");
    return g.shifted(-x_shift);
}

} // namespace

bool h_convex_on_grid(const PiecewiseLinear& h, const Grid& grid) {
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double mid = h(grid.at(i));
        if (mid > 0.5 * (h(grid.at(i - 1)) + h(grid.at(i + 1))) + 1e-12)
            return false;
    }
    return true;
}

InventoryModel::InventoryModel(double K, double c_bar, PiecewiseLinear h, DemandDistribution demand, Grid grid)
    : K_(K), c_bar_(c_bar), h_(std::move(h)), demand_(std::move(demand)), grid_(std::move(grid)) {
    if (!(K >= 0) || !std::isfinite(K))
        throw ConfigError("cost: K must be finite and >= 0");
    if (!(c_bar >= 0) || !std::isfinite(c_bar))
        throw ConfigError("cost: c_bar must be finite and >= 0");
    if (!h_.is_convex())
        throw ConfigError("h: holding/backorder cost must be convex");
    if (h_.left_slope() > 0 || h_.right_slope() < 0)
        throw ConfigError("h: must be bounded below (left slope <= 0, right slope >= 0)");

    const double h_min = h_.min_value();
    const double h0 = h_(0.0);
    if (h0 != 0.0 || h0 != h_min) {
        if (h_.left_slope() == 0)
            throw ConfigError("h: no finite leftmost minimizer to recentre at");
        x_shift_ = h_.leftmost_minimizer();
        h_offset_ = h_min;
        h_ = h_.shifted(x_shift_, -h_min);
        grid_ = recentred_grid(grid_, x_shift_);
    }
    if (!h_convex_on_grid(h_, grid_))
        throw ConfigError("h: not convex on the grid");
    h_coercive_ = h_.left_slope() < 0 && h_.right_slope() > 0 && h_(-grid_.step()) > 0;
}

InventoryModel InventoryModel::with_K(double K) const {
    InventoryModel m = *this;
    if (!(K >= 0) || !std::isfinite(K))
        throw ConfigError("cost: K must be finite and >= 0");
    m.K_ = K;
    return m;
}

InventoryModel InventoryModel::with_c_bar(double c_bar) const {
    InventoryModel m = *this;
    if (!(c_bar >= 0) || !std::isfinite(c_bar))
        throw ConfigError("cost: c_bar must be finite and >= 0");
    m.c_bar_ = c_bar;
    return m;
}

InventoryModel InventoryModel::with_grid(Grid grid) const {
    return InventoryModel(K_, c_bar_, h_, demand_, std::move(grid));
}

double expected_holding(const InventoryModel& model, double y) {
    double s = 0.0;
    for (const auto& a : model.demand().atoms())
        s += a.prob * model.h()(y - a.value);
    return s;
}

CostTable::CostTable(const InventoryModel& model)
    : K_(model.K()), c_bar_(model.c_bar()), step_(model.grid().step()) {
    const Grid& g = model.grid();
    expected_holding_.resize(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double v = ssdp::expected_holding(model, g.at(j));
        if (!std::isfinite(v) || v < 0)
            throw ConfigError("cost: E h(y - D) must be finite and >= 0");
        expected_holding_[j] = v;
    }
}

CostTable build_cost(const InventoryModel& model) { return CostTable(model); }

Kernel::Kernel(const InventoryModel& model) {
    const Grid& g = model.grid();
    offsets_.reserve(g.size() + 1);
    offsets_.push_back(0);
    clamped_rows_.assign(g.size(), 0);
    for (std::size_t j = 0; j < g.size(); ++j) {
        for (const auto& atom : model.demand().atoms()) {
            const auto b = g.locate(g.at(j) - atom.value);
            if (b.clamped) {
                ++clamp_events_;
                clamped_rows_[j] = 1;
            }
            if (b.weight_hi == 0.0) {
                entries_.push_back({b.lo, atom.prob});
            } else {
                entries_.push_back({b.lo, atom.prob * (1.0 - b.weight_hi)});
                entries_.push_back({b.lo + 1, atom.prob * b.weight_hi});
            }
        }
        offsets_.push_back(entries_.size());
    }
}

double Kernel::row_sum(std::size_t post_level) const noexcept {
    double s = 0.0;
    for (const auto& t : row(post_level))
        s += t.prob;
    return s;
}

} // namespace ssdp
