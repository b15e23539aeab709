#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ssdp {

struct DemandAtom {
    double value;
    double prob;
};

enum class DemandSource { native_discrete, discretized_continuous };

/// Finite probability mass table for the one-period demand D.
class DemandDistribution {
public:
    /// Atoms are sorted by value and equal values merged. Their total mass is
    /// recorded as truncation_mass and must be within 1e-8 of one; the
    /// stored probabilities are renormalized.
    static DemandDistribution from_atoms(std::vector<DemandAtom> atoms,
                                         DemandSource source = DemandSource::native_discrete);

    std::span<const DemandAtom> atoms() const noexcept { return atoms_; }
    DemandSource source() const noexcept { return source_; }
    double truncation_mass() const noexcept { return truncation_mass_; }

    double mean() const noexcept;
    double max_value() const noexcept { return atoms_.back().value; }
    /// P(D > 0)
    double positive_mass() const noexcept;
    /// Every atom is an integer multiple of `step`.
    bool on_lattice(double step) const noexcept;

private:
    DemandDistribution() = default;

    std::vector<DemandAtom> atoms_;
    DemandSource source_ = DemandSource::native_discrete;
    double truncation_mass_ = 1.0;
};

namespace continuous {
struct Uniform {
    double lo;
    double hi;
};
struct Exponential {
    double mean;
};
struct Gamma {
    double shape;
    double scale;
};
struct Normal {
    double mean;
    double sd;
};
struct PointMass {
    double value;
};
} // namespace continuous

using ContinuousDemandSpec = std::variant<continuous::Uniform, continuous::Exponential, continuous::Gamma,
                                          continuous::Normal, continuous::PointMass>;

/// Upper tail mass removed before binning.
inline constexpr double demand_tail_mass = 1e-8;

/// n_atoms equal-probability quantile bins of the law truncated at its
/// (1 - 1e-8) quantile; each atom sits at the conditional mean of its bin.
DemandDistribution discretize_demand(const ContinuousDemandSpec& spec, std::size_t n_atoms);

ContinuousDemandSpec make_continuous_spec(const std::string& family,
                                          const std::vector<std::pair<std::string, double>>& params);

} // namespace ssdp
