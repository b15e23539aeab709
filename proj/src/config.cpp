#include "ssdp/config.hpp"

#include "ssdp/error.hpp"

#include <fstream>

namespace ssdp {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError("config: missing '" + where + "." + key + "'");
    return j.at(key);
}

double number(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_number())
        throw ConfigError("config: '" + where + "." + key + "' must be a number");
    return v.get<double>();
}

Grid parse_grid(const json& j) {
    const bool integer_mode = j.value("integer_mode", false);
    return Grid(number(j, "x_lo", "grid"), number(j, "x_hi", "grid"), number(j, "step", "grid"), integer_mode);
}

DemandDistribution parse_demand(const json& j) {
    if (j.contains("atoms")) {
        std::vector<DemandAtom> atoms;
        for (const json& a : j.at("atoms")) {
            if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
                throw ConfigError("config: demand.atoms entries must be [value, prob]");
            atoms.push_back({a[0].get<double>(), a[1].get<double>()});
        }
        return DemandDistribution::from_atoms(std::move(atoms));
    }
    if (j.contains("continuous")) {
        const json& c = j.at("continuous");
        const json& fam = require(c, "family", "demand.continuous");
        if (!fam.is_string())
            throw ConfigError("config: demand.continuous.family must be a string");
        std::vector<std::pair<std::string, double>> params;
        if (c.contains("params")) {
            for (const auto& [k, v] : c.at("params").items()) {
                if (!v.is_number())
                    throw ConfigError("config: demand.continuous.params." + k + " must be a number");
                params.emplace_back(k, v.get<double>());
            }
        }
        const double n = number(c, "n_atoms", "demand.continuous");
        if (n < 1 || n != static_cast<double>(static_cast<std::size_t>(n)))
            throw ConfigError("config: demand.continuous.n_atoms must be a positive integer");
        return discretize_demand(make_continuous_spec(fam.get<std::string>(), params), static_cast<std::size_t>(n));
    }
    throw ConfigError("config: demand needs 'atoms' or 'continuous'");
}

PiecewiseLinear parse_h(const json& j, const Grid& grid, double d_max) {
    if (j.contains("breakpoints")) {
        std::vector<PiecewiseLinear::Point> pts;
        for (const json& p : j.at("breakpoints")) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                throw ConfigError("config: cost.h.breakpoints entries must be [x, y]");
            pts.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        return PiecewiseLinear(std::move(pts));
    }
    if (j.contains("polynomial")) {
        const json& p = j.at("polynomial");
        std::vector<double> coef;
        for (const json& c : require(p, "coefficients", "cost.h.polynomial")) {
            if (!c.is_number())
                throw ConfigError("config: polynomial coefficients must be numbers");
            coef.push_back(c.get<double>());
        }
        const auto n = static_cast<std::size_t>(p.value("n_points", 2 * grid.size() + 1));
        auto f = [&coef](double x) {
            double y = 0.0;
            for (auto it = coef.rbegin(); it != coef.rend(); ++it)
                y = y * x + *it;
            return y;
        };
        return PiecewiseLinear::sample(f, grid.x_lo() - d_max, grid.x_hi(), n);
    }
    throw ConfigError("config: cost.h needs 'breakpoints' or 'polynomial'");
}

} // namespace

ModelConfig parse_model_config(const nlohmann::json& j) {
    try {
        if (!j.is_object())
            throw ConfigError("config: top level must be an object");
        Grid grid = parse_grid(require(j, "grid", "config"));
        DemandDistribution demand = parse_demand(require(j, "demand", "config"));
        const json& cost = require(j, "cost", "config");
        PiecewiseLinear h = parse_h(require(cost, "h", "cost"), grid, demand.max_value());
        ModelConfig cfg{InventoryModel(number(cost, "K", "cost"), number(cost, "c_bar", "cost"), std::move(h),
                                       std::move(demand), std::move(grid))};
        cfg.name = j.value("name", std::string());
        if (j.contains("solver")) {
            const json& s = j.at("solver");
            if (s.contains("eps_act"))
                cfg.eps_act = number(s, "eps_act", "solver");
            if (s.contains("tol"))
                cfg.tol = number(s, "tol", "solver");
            if (s.contains("max_iterations")) {
                const json& m = s.at("max_iterations");
                if (!m.is_number_integer() || m.get<long long>() < 1)
                    throw ConfigError("config: solver.max_iterations must be a positive integer");
                cfg.max_iterations = m.get<std::size_t>();
            }
            if (!(cfg.eps_act >= 0.0) || (cfg.tol && !(*cfg.tol > 0.0)))
                throw ConfigError("config: solver.eps_act must be >= 0 and solver.tol > 0");
        }
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ModelConfig load_model_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f)
        throw ConfigError("config file '" + path.string() + "' not found or unreadable");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file '" + path.string() + "': " + e.what());
    }
    return parse_model_config(j);
}

} // namespace ssdp
