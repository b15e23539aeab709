#include "ssdp/rng.hpp"

#include <algorithm>

namespace ssdp {

DemandSampler::DemandSampler(const DemandDistribution& d) {
    double c = 0.0;
    for (const auto& a : d.atoms()) {
        values_.push_back(a.value);
        c += a.prob;
        cumulative_.push_back(c);
    }
    cumulative_.back() = 1.0;
}

double DemandSampler::operator()(PathRng& rng) const noexcept {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), values_.size() - 1);
    return values_[k];
}

} // namespace ssdp
