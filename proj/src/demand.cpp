#include "ssdp/demand.hpp"

#include "ssdp/error.hpp"

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <functional>
#include <cmath>
#include <map>

namespace ssdp {

DemandDistribution DemandDistribution::from_atoms(std::vector<DemandAtom> atoms, DemandSource source) {
    if (atoms.empty())
        throw ConfigError("demand: atom list is empty");
    double total = 0.0;
    for (const auto& a : atoms) {
        if (!std::isfinite(a.value) || a.value < 0)
            throw ConfigError("demand: atom values must be finite and >= 0");
        if (!std::isfinite(a.prob) || !(a.prob > 0))
            throw ConfigError("demand: atom probabilities must be > 0");
        total += a.prob;
    }
    if (std::abs(total - 1.0) > demand_tail_mass * (1.0 + 1e-6))
        throw ConfigError("demand: probabilities must sum to 1 (got " + std::to_string(total) + ")");

    std::sort(atoms.begin(), atoms.end(), [](const DemandAtom& a, const DemandAtom& b) { return a.value < b.value; });
    DemandDistribution d;
    for (const auto& a : atoms) {
        if (!d.atoms_.empty() && d.atoms_.back().value == a.value)
            d.atoms_.back().prob += a.prob;
        else
            d.atoms_.push_back(a);
    }
    for (auto& a : d.atoms_)
        a.prob /= total;
    d.source_ = source;
    d.truncation_mass_ = total;
    return d;
}

double DemandDistribution::mean() const noexcept {
    double m = 0.0;
    for (const auto& a : atoms_)
        m += a.prob * a.value;
    return m;
}

double DemandDistribution::positive_mass() const noexcept {
    double p = 0.0;
    for (const auto& a : atoms_)
        if (a.value > 0)
            p += a.prob;
    return p;
}

bool DemandDistribution::on_lattice(double step) const noexcept {
    for (const auto& a : atoms_) {
        const double k = a.value / step;
        if (std::abs(k - std::round(k)) > 1e-9)
            return false;
    }
    return true;
}

namespace {

// Quantile function and partial expectation E[D; D <= q] for each family.
struct Family {
    std::function<double(double)> quantile;
    std::function<double(double)> partial_mean;
    double support_lo;
};

Family family_of(const continuous::Uniform& u) {
    const double w = u.hi - u.lo;
    return {[=](double p) { return u.lo + p * w; },
            [=](double q) { return (q * q - u.lo * u.lo) / (2.0 * w); }, u.lo};
}

Family family_of(const continuous::Gamma& g) {
    boost::math::gamma_distribution<double> dist(g.shape, g.scale);
    return {[=](double p) { return p <= 0 ? 0.0 : boost::math::quantile(dist, p); },
            [=](double q) {
                // x f(x; k, theta) = k theta f(x; k + 1, theta)
                return q <= 0 ? 0.0 : g.shape * g.scale * boost::math::gamma_p(g.shape + 1.0, q / g.scale);
            },
            0.0};
}

} // namespace

DemandDistribution discretize_demand(const ContinuousDemandSpec& spec, std::size_t n_atoms) {
    if (n_atoms < 2)
        throw ConfigError("demand: n_atoms must be >= 2");

    Family fam;
    if (const auto* pm = std::get_if<continuous::PointMass>(&spec)) {
        if (pm->value < 0)
            throw ConfigError("demand: P(D < 0) > 0 is not allowed");
        return DemandDistribution::from_atoms({{pm->value, 1.0}}, DemandSource::discretized_continuous);
    } else if (const auto* n = std::get_if<continuous::Normal>(&spec)) {
        (void)n;
        throw ConfigError("demand: P(D < 0) > 0 is not allowed (normal family)");
    } else if (const auto* u = std::get_if<continuous::Uniform>(&spec)) {
        if (u->lo < 0)
            throw ConfigError("demand: P(D < 0) > 0 is not allowed");
        if (!(u->hi > u->lo))
            throw ConfigError("demand: uniform requires hi > lo");
        fam = family_of(*u);
    } else if (const auto* e = std::get_if<continuous::Exponential>(&spec)) {
        if (!(e->mean > 0))
            throw ConfigError("demand: exponential mean must be > 0");
        fam = family_of(continuous::Gamma{1.0, e->mean});
    } else if (const auto* g = std::get_if<continuous::Gamma>(&spec)) {
        if (!(g->shape > 0) || !(g->scale > 0))
            throw ConfigError("demand: gamma shape and scale must be > 0");
        fam = family_of(*g);
    }

    const double kept = 1.0 - demand_tail_mass;
    const double bin_mass = kept / static_cast<double>(n_atoms);
    std::vector<DemandAtom> atoms;
    atoms.reserve(n_atoms);
    double q_prev = fam.support_lo;
    double pm_prev = fam.partial_mean(q_prev);
    for (std::size_t i = 1; i <= n_atoms; ++i) {
        const double q = fam.quantile(bin_mass * static_cast<double>(i));
        const double pm = fam.partial_mean(q);
        double value = (pm - pm_prev) / bin_mass;
        value = std::clamp(value, q_prev, q);
        atoms.push_back({value, bin_mass});
        q_prev = q;
        pm_prev = pm;
    }
    // The atoms carry mass 1 - 1e-8; rescale so from_atoms records that as the truncation mass.
    return DemandDistribution::from_atoms(std::move(atoms), DemandSource::discretized_continuous);
}

ContinuousDemandSpec make_continuous_spec(const std::string& family,
                                          const std::vector<std::pair<std::string, double>>& params) {
    std::map<std::string, double> p(params.begin(), params.end());
    auto need = [&](const char* key) {
        auto it = p.find(key);
        if (it == p.end())
            throw ConfigError("demand: family '" + family + "' needs parameter '" + key + "'");
        return it->second;
    };
    if (family == "uniform")
        return continuous::Uniform{need("lo"), need("hi")};
    if (family == "exponential")
        return continuous::Exponential{need("mean")};
    if (family == "gamma")
        return continuous::Gamma{need("shape"), need("scale")};
    if (family == "normal")
        return continuous::Normal{need("mean"), need("sd")};
    if (family == "point_mass")
        return continuous::PointMass{need("value")};
    throw ConfigError("demand: unknown family '" + family + "'");
}

} // namespace ssdp
