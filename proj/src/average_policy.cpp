#include "ssdp/average_policy.hpp"

#include "ssdp/error.hpp"

#include <algorithm>

namespace ssdp {

AverageReport average_sS(const Mdp& mdp, std::span<const double> schedule, double tol,
                         std::optional<std::size_t> max_iterations) {
    AverageReport r;
    const Grid& g = mdp.grid();
    if (mdp.model.demand().positive_mass() == 0.0) {
        // Ordering up to 0 from below and never otherwise is average-cost optimal.
        r.degenerate = true;
        r.settled = true;
        r.policy.s = 0.0;
        r.policy.S = 0.0;
        r.policy.context = "average";
        if (const auto zero = g.index_of(0.0)) {
            r.policy.s_index = *zero;
            r.policy.S_index = *zero;
            r.bounded = true;
        } else {
            r.note = "level 0 is not a grid point; ";
        }
        r.note += "D = 0 almost surely: the (0,0) policy is average-cost optimal, with w(x) = 0 for x <= 0 "
                  "and w(x) = h(x) for x > 0";
        return r;
    }

    r.sweep = sweep(mdp, schedule, tol, max_iterations);
    const auto& recs = r.sweep->records;
    if (recs.empty() && r.sweep->partial)
        throw ConvergenceError("average_sS: " + r.sweep->stop_reason);
    if (recs.empty() || !recs.back().sS)
        throw ConfigError("average_sS: no thresholds at the last alpha" +
                          (recs.empty() ? std::string() : ": " + recs.back().note));
    r.policy = *recs.back().sS;
    r.policy.context = "average";

    if (recs.size() >= 3) {
        bool all = true;
        std::size_t s_lo = g.size(), s_hi = 0, S_lo = g.size(), S_hi = 0;
        for (std::size_t k = recs.size() - 3; k < recs.size(); ++k) {
            if (!recs[k].sS) {
                all = false;
                break;
            }
            s_lo = std::min(s_lo, recs[k].sS->s_index);
            s_hi = std::max(s_hi, recs[k].sS->s_index);
            S_lo = std::min(S_lo, recs[k].sS->S_index);
            S_hi = std::max(S_hi, recs[k].sS->S_index);
        }
        if (all) {
            r.settled = s_hi - s_lo <= 1 && S_hi - S_lo <= 1;
            r.bounded = s_lo > 0 && S_hi + 1 < g.size();
        }
    }
    if (!r.settled)
        r.note = "unsettled: thresholds still drifting at the end of the schedule";

    r.relative = relative_value(*r.sweep);
    r.optimality = check_optimality_inequality(mdp, r.policy.post_levels(g), *r.relative, default_slack(*r.sweep));
    return r;
}

} // namespace ssdp
