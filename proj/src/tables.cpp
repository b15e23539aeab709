#include "ssdp/tables.hpp"

#include "ssdp/error.hpp"

namespace ssdp {

std::string to_string(TerminalId id) {
    switch (id) {
    case TerminalId::zero: return "zero";
    case TerminalId::v0_alpha: return "v0_alpha";
    case TerminalId::user: return "user";
    }
    return "user";
}

PolicyTable PolicyTable::from_chosen(const Grid& grid, std::vector<std::size_t> chosen) {
    if (chosen.size() != grid.size())
        throw ConfigError("policy: one action per grid state required");
    PolicyTable p{grid, std::move(chosen), {}};
    p.action_sets.reserve(p.chosen.size());
    for (std::size_t i = 0; i < p.chosen.size(); ++i) {
        if (i + p.chosen[i] >= grid.size())
            throw ConfigError("policy: action leaves the grid");
        p.action_sets.push_back({p.chosen[i]});
    }
    return p;
}

} // namespace ssdp
