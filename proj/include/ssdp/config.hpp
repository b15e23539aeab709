#pragma once

#include "ssdp/model.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace ssdp {

struct ModelConfig {
    InventoryModel model;
    double eps_act = 1e-9;
    std::optional<double> tol;
    std::optional<std::size_t> max_iterations; // value-iteration cap for sweeps
    std::string name;
};

/// Parses
///   { "name": ..., "grid": {x_lo, x_hi, step, integer_mode},
///     "cost": {K, c_bar, h: {breakpoints: [[x, y], ...]} | {polynomial: {coefficients, n_points}}},
///     "demand": {atoms: [[value, prob], ...]} | {continuous: {family, params: {...}, n_atoms}},
///     "solver": {eps_act, tol, max_iterations} }
/// Polynomial h (coefficients in increasing degree) is sampled on n_points
/// breakpoints spanning [x_lo - max demand, x_hi]. Any problem throws ConfigError.
ModelConfig parse_model_config(const nlohmann::json& j);
ModelConfig load_model_config(const std::filesystem::path& path);

} // namespace ssdp
