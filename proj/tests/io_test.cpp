#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ssdp/config.hpp"
#include "ssdp/error.hpp"
#include "ssdp/io.hpp"

#include <cstdlib>
#include <limits>
#include <string>

using namespace ssdp;
using nlohmann::json;

TEST_CASE("CSV quoting follows RFC 4180") {
    CHECK(io::csv_escape("plain") == "plain");
    CHECK(io::csv_escape("a,b") == "\"a,b\"");
    CHECK(io::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(io::csv_escape("two\nlines") == "\"two\nlines\"");

    io::CsvWriter w({"name", "x"});
    w.field(std::string("v_{t,F}")).field(0.1).end_row();
    w.field(std::string("x")).empty().end_row();
    CHECK(w.str() == "name,x\r\n\"v_{t,F}\",0.1\r\nx,\r\n");
    CHECK(w.rows() == 2);
    w.field(1.0);
    CHECK_THROWS(w.end_row());
}

TEST_CASE("doubles round-trip through their text form") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 12345.678901234567, 0.9}) {
        const auto s = io::format_double(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    CHECK(io::format_double(-0.0) == "0");
    CHECK(io::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("model config parsing") {
    const json j = json::parse(R"({
        "name": "a",
        "grid": {"x_lo": -20, "x_hi": 20, "step": 1, "integer_mode": true},
        "cost": {"K": 2, "c_bar": 1, "h": {"breakpoints": [[-1, 3], [0, 0], [1, 1]]}},
        "demand": {"atoms": [[0, 0.25], [1, 0.5], [2, 0.25]]},
        "solver": {"eps_act": 1e-8}
    })");
    const auto cfg = parse_model_config(j);
    CHECK(cfg.name == "a");
    CHECK(cfg.model.grid().size() == 41);
    CHECK(cfg.model.K() == 2);
    CHECK(cfg.model.demand().mean() == 1.0);
    CHECK(cfg.eps_act == 1e-8);
    CHECK_FALSE(cfg.tol.has_value());
    CHECK(expected_holding(cfg.model, 0.0) == 3.0);
}

TEST_CASE("continuous demand and polynomial h") {
    const json j = json::parse(R"({
        "grid": {"x_lo": -10, "x_hi": 10, "step": 0.5},
        "cost": {"K": 1, "c_bar": 1, "h": {"polynomial": {"coefficients": [0, 0, 1], "n_points": 88}}},
        "demand": {"continuous": {"family": "uniform", "params": {"lo": 0, "hi": 2}, "n_atoms": 4}}
    })");
    const auto cfg = parse_model_config(j);
    CHECK(cfg.model.demand().atoms().size() == 4);
    CHECK(cfg.model.h()(1.0) == doctest::Approx(1.0));
    CHECK(cfg.model.h()(0.0) == 0.0);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_model_config(json::parse("[]")), ConfigError);
    CHECK_THROWS_AS(parse_model_config(json::parse(R"({"grid": {"x_lo": 0}})")), ConfigError);
    const json no_demand = json::parse(R"({
        "grid": {"x_lo": -2, "x_hi": 2, "step": 1},
        "cost": {"K": 1, "c_bar": 1, "h": {"breakpoints": [[-1, 1], [0, 0], [1, 1]]}},
        "demand": {}
    })");
    CHECK_THROWS_WITH_AS(parse_model_config(no_demand), doctest::Contains("demand"), ConfigError);
    json bad_atom = no_demand;
    bad_atom["demand"] = json::parse(R"({"atoms": [[0, "x"]]})");
    CHECK_THROWS_AS(parse_model_config(bad_atom), ConfigError);
    json bad_type = no_demand;
    bad_type["demand"] = json::parse(R"({"atoms": [[0, 1]]})");
    bad_type["cost"]["K"] = "two";
    CHECK_THROWS_AS(parse_model_config(bad_type), ConfigError);
    CHECK_THROWS_AS(load_model_config("/definitely/missing.json"), ConfigError);
}

TEST_CASE("manifest serialization") {
    io::RunManifest m;
    m.command = "solve";
    m.seed = 7;
    m.outputs = {"value.csv"};
    m.verifications["K_convexity"] = "pass";
    const auto j = m.to_json();
    CHECK(j["command"] == "solve");
    CHECK(j["seed"] == 7);
    CHECK(j["outputs"][0] == "value.csv");
    CHECK(j["verifications"]["K_convexity"] == "pass");
    CHECK_FALSE(j.contains("error"));
}
