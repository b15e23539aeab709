#pragma once

#include "ssdp/grid.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ssdp {

enum class TerminalId { zero, v0_alpha, user };

std::string to_string(TerminalId id);

/// Where a table came from: horizon t (none for infinite horizon), terminal
/// value and discount factor.
struct Provenance {
    std::optional<std::size_t> horizon;
    TerminalId terminal = TerminalId::zero;
    double alpha = 0.0;
};

struct ValueTable {
    Grid grid;
    std::vector<double> values;
    Provenance tag;

    double operator[](std::size_t i) const noexcept { return values[i]; }
    std::size_t size() const noexcept { return values.size(); }
};

/// Actions are stored as order quantities in grid steps: action k at state i
/// moves the inventory to grid level i + k.
struct PolicyTable {
    Grid grid;
    std::vector<std::size_t> chosen;
    std::vector<std::vector<std::size_t>> action_sets; // epsilon-optimal, ascending

    std::size_t size() const noexcept { return chosen.size(); }
    double action(std::size_t i) const noexcept { return static_cast<double>(chosen[i]) * grid.step(); }
    std::size_t post_level(std::size_t i) const noexcept { return i + chosen[i]; }

    /// Stationary policy from per-state chosen actions; each action set is {chosen}.
    static PolicyTable from_chosen(const Grid& grid, std::vector<std::size_t> chosen);
};

} // namespace ssdp
