#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli_support.hpp"

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

TEST_CASE("solve on Instance A writes the artifacts") {
    const auto out = cli::scratch("solve");
    REQUIRE(cli::run("solve " + cli::config("instance_a.json") + " --alpha 0.9 --out " + out.string()) == 0);
    const auto m = json::parse(cli::slurp(out / "manifest.json"));
    CHECK(m["results"]["s"] == 1.0);
    CHECK(m["results"]["S"] == 2.0);
    CHECK(m["results"]["K_convex_ok"] == true);
    CHECK(m["exit_code"] == 0);
    for (const auto& f : m["outputs"])
        CHECK(fs::exists(out / f.get<std::string>()));
    const auto value = cli::slurp(out / "value.csv");
    CHECK(value.rfind("x,v,chosen_action,n_eps_optimal\r\n", 0) == 0);
    CHECK(cli::slurp(out / "thresholds.csv").rfind("context,s,S,g_min,K_convex_ok,extrapolation_count", 0) == 0);
}

TEST_CASE("finite horizon solve with the v0_alpha terminal") {
    const auto out = cli::scratch("solve_fh");
    REQUIRE(cli::run("solve " + cli::config("instance_a.json") +
                     " --alpha 0.9 --horizon 10 --terminal v0alpha --out " + out.string()) == 0);
    const auto m = json::parse(cli::slurp(out / "manifest.json"));
    CHECK(m["results"]["epochs"].size() == 10);
    CHECK(m["results"]["terminal"] == "v0_alpha");
}

TEST_CASE("usage and config errors exit with 2") {
    const auto out = cli::scratch("errors");
    CHECK(cli::run("solve " + cli::config("instance_a.json") + " --alpha 1.0 --out " + out.string()) == 2);
    const auto m = json::parse(cli::slurp(out / "manifest.json"));
    CHECK(m["error"].get<std::string>().find("alpha must lie in [0,1)") != std::string::npos);
    CHECK(m["exit_code"] == 2);

    CHECK(cli::run("solve /no/such/config.json --out " + out.string()) == 2);
    CHECK(cli::run("solve " + cli::config("instance_a.json") + " --terminal bogus --horizon 3 --out " +
                   out.string()) == 2);
    CHECK(cli::run("frobnicate") == 2);
    CHECK(cli::run("") == 2);
    CHECK(cli::run("verify " + cli::config("instance_a_wide.json") + " --suite brute-force-sS --out " +
                   out.string()) == 2);
    CHECK(json::parse(cli::slurp(out / "manifest.json"))["error"].get<std::string>().find(
              "grid too large for exhaustive oracle") != std::string::npos);
}

TEST_CASE("non-convergence exits with 3") {
    const auto out = cli::scratch("nonconv");
    fs::create_directories(out);
    auto cfg = json::parse(cli::slurp(cli::config("instance_a.json")));
    cfg["solver"]["max_iterations"] = 40;
    const auto path = out / "capped.json";
    std::ofstream(path) << cfg.dump();
    CHECK(cli::run("sweep " + path.string() + " --schedule 0.5,0.75,0.99 --out " + (out / "run").string()) == 3);
    const auto m = json::parse(cli::slurp(out / "run" / "manifest.json"));
    CHECK(m["exit_code"] == 3);
    CHECK(m["error"].get<std::string>().find("iteration cap") != std::string::npos);
    CHECK(m["results"]["partial"] == true);
}

TEST_CASE("sweep on the zero-demand config short-circuits to (0,0)") {
    const auto out = cli::scratch("sweep_d0");
    REQUIRE(cli::run("sweep " + cli::config("zero_demand.json") + " --schedule geometric:8 --out " + out.string()) ==
            0);
    const auto m = json::parse(cli::slurp(out / "manifest.json"));
    CHECK(m["results"]["degenerate"] == true);
    CHECK(m["results"]["s"] == 0.0);
    CHECK(m["results"]["S"] == 0.0);
    CHECK(m["notes"][0].get<std::string>().find("(0,0) policy") != std::string::npos);
    CHECK(m["verifications"]["assumption_B"] == "unbounded");
}

TEST_CASE("a one-point schedule runs but is flagged") {
    const auto out = cli::scratch("sweep_one");
    REQUIRE(cli::run("sweep " + cli::config("instance_a.json") + " --schedule 0.9 --out " + out.string()) == 0);
    const auto m = json::parse(cli::slurp(out / "manifest.json"));
    bool flagged = false;
    for (const auto& n : m["notes"])
        flagged = flagged || n.get<std::string>().find("insufficient for limit analysis") != std::string::npos;
    CHECK(flagged);
}

TEST_CASE("verify with large c_bar still passes brute force") {
    const auto out = cli::scratch("verify_cbar4");
    CHECK(cli::run("verify " + cli::config("instance_a_cbar4.json") + " --suite brute-force-sS --out " +
                   out.string()) == 0);
    const auto m = json::parse(cli::slurp(out / "manifest.json"));
    CHECK(m["results"]["slope_condition"] == false);
    CHECK(m["verifications"]["brute-force-sS"] == "pass");
}

TEST_CASE("renewal report layout") {
    const auto out = cli::scratch("verify_renewal");
    REQUIRE(cli::run("verify " + cli::config("instance_a.json") + " --suite renewal --seed 7 --out " +
                     out.string()) == 0);
    const auto r = json::parse(cli::slurp(out / "renewal.json"));
    for (const char* k : {"y", "n_paths", "seed", "mean_N", "wald", "overshoot"})
        CHECK(r.contains(k));
    CHECK(r["seed"] == 7);
    CHECK(r["wald"].contains("z"));
    CHECK(r["overshoot"].contains("margin"));
}

TEST_CASE("reruns and thread counts give byte-identical CSVs") {
    const auto a = cli::scratch("det_a"), b = cli::scratch("det_b"), c = cli::scratch("det_c");
    const std::string base = "sweep " + cli::config("instance_a.json") + " --schedule geometric:6 --seed 99";
    REQUIRE(cli::run(base + " --threads 1 --out " + a.string()) == 0);
    REQUIRE(cli::run(base + " --threads 1 --out " + b.string()) == 0);
    REQUIRE(cli::run(base + " --threads 4 --out " + c.string()) == 0);
    for (const char* f : {"sweep.csv", "optimality.csv", "sim.csv"}) {
        const auto ref = cli::slurp(a / f);
        CHECK(!ref.empty());
        CHECK(ref == cli::slurp(b / f));
        CHECK(ref == cli::slurp(c / f));
    }
}
