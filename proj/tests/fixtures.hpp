#pragma once

#include "ssdp/demand.hpp"
#include "ssdp/model.hpp"
#include "ssdp/piecewise_linear.hpp"

#include <vector>

namespace fixtures {

// Integer grid [-20, 20], K = 2, c_bar = 1, h(x) = max(x, -3x),
// D in {0, 1, 2} with probabilities {1/4, 1/2, 1/4}.
inline ssdp::PiecewiseLinear instance_a_h() { return ssdp::PiecewiseLinear({{-1, 3}, {0, 0}, {1, 1}}); }

inline ssdp::DemandDistribution instance_a_demand() {
    return ssdp::DemandDistribution::from_atoms({{0, 0.25}, {1, 0.5}, {2, 0.25}});
}

inline ssdp::InventoryModel instance_a(double K = 2.0, double c_bar = 1.0, double lo = -20, double hi = 20) {
    return ssdp::InventoryModel(K, c_bar, instance_a_h(), instance_a_demand(), ssdp::Grid(lo, hi, 1.0, true));
}

// D = 0 almost surely on [-5, 5] with step 1/4, h(x) = max(x, -2x).
inline ssdp::InventoryModel zero_demand(double K = 2.0) {
    return ssdp::InventoryModel(K, 1.0, ssdp::PiecewiseLinear({{-1, 2}, {0, 0}, {1, 1}}),
                                ssdp::DemandDistribution::from_atoms({{0, 1.0}}), ssdp::Grid(-5, 5, 0.25));
}

// K = 0, c_bar = 0, h = 0.
inline ssdp::InventoryModel zero_cost_stub() {
    return ssdp::InventoryModel(0.0, 0.0, ssdp::PiecewiseLinear::zero(), instance_a_demand(),
                                ssdp::Grid(-10, 10, 1.0, true));
}

// D = 1 almost surely.
inline ssdp::DemandDistribution unit_demand() { return ssdp::DemandDistribution::from_atoms({{1, 1.0}}); }

} // namespace fixtures
