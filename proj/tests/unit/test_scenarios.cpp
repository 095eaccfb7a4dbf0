#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>

#include "dgw/errors.hpp"
#include "dgw/scenarios.hpp"
#include "golden_tables.hpp"

using namespace dgw;

namespace {

nlohmann::json stable_json(const ScenarioReport& r)
{
    auto j = nlohmann::json::parse(r.to_json(true));
    j.erase("wall_ms");
    return j;
}

}  // namespace

TEST_SUITE("scenarios") {

TEST_CASE("every registry scenario passes at its default window")
{
    REQUIRE(scenario_names().size() == 10);
    for (const auto& name : scenario_names()) {
        CAPTURE(name);
        const auto r = run_scenario(name);
        CHECK(r.pass());
        CHECK_FALSE(r.assertions.empty());
        CHECK_FALSE(r.conclusion.empty());
        CHECK_FALSE(r.inputs.empty());
        for (const auto& a : r.assertions) {
            const bool known = a.provenance == "PAPER" || a.provenance == "DERIVED" || a.provenance == "TRIVIAL";
            CHECK(known);
        }
    }
}

TEST_CASE("reports are reproducible")
{
    for (const auto& name : scenario_names()) {
        CAPTURE(name);
        CHECK(stable_json(run_scenario(name)) == stable_json(run_scenario(name)));
    }
}

TEST_CASE("report JSON carries the documented fields")
{
    const auto j = nlohmann::json::parse(run_scenario("ext5_not_faithful").to_json());
    for (const char* k : {"name", "conclusion", "window", "inputs", "assertions", "pass", "wall_ms"}) CHECK(j.contains(k));
    CHECK(j["conclusion"] == "S not faithful witness");
    CHECK(j["pass"] == true);
    CHECK_FALSE(j.contains("tables"));
    CHECK(nlohmann::json::parse(run_scenario("ext5_not_faithful").to_json(true)).contains("tables"));
}

TEST_CASE("enlarging the window never turns a pass into a failure")
{
    for (const auto& name : scenario_names()) {
        CAPTURE(name);
        const Window m = minimum_window(name);
        for (int grow = 0; grow <= 4; ++grow) {
            const Window w{m.n_min - grow % 2, m.n_max + grow, m.d_max + 2 * grow};
            CAPTURE(grow);
            CHECK(run_scenario(name, w).pass());
        }
    }
}

TEST_CASE("unknown scenarios and small windows are input errors")
{
    CHECK_THROWS_AS(run_scenario("no_such_scenario"), InputError);
    for (const auto& name : scenario_names()) {
        Window w = minimum_window(name);
        w.d_max -= 1;
        CAPTURE(name);
        CHECK_THROWS_AS(run_scenario(name, w), InputError);
    }
    CHECK_THROWS_AS(run_scenario("koszul_tables", Window{3, 1, 4}), InputError);
}

TEST_CASE("the golden directory can be overridden")
{
    const auto dir = std::filesystem::temp_directory_path() / "dgw_golden_override";
    std::filesystem::create_directories(dir);
    DimTable t;
    t.set({0, 0}, 7, true);
    save_golden(dir.string(), "koszul_tables", "test", {{"H(A)", t}});
    ::setenv("DGW_GOLDEN_DIR", dir.c_str(), 1);
    CHECK(golden_dir() == dir.string());
    const auto g = load_golden("koszul_tables");
    REQUIRE(g.count("H(A)"));
    CHECK(g.at("H(A)").dim({0, 0}) == 7);
    // a golden file that disagrees with the engine must fail the scenario
    CHECK_FALSE(run_scenario("koszul_tables").pass());
    ::unsetenv("DGW_GOLDEN_DIR");
    CHECK(run_scenario("koszul_tables").pass());
    std::filesystem::remove_all(dir);
}

TEST_CASE("golden files match the oracle")
{
    for (const auto& g : golden::compute_all()) {
        CAPTURE(g.scenario);
        const auto stored = load_golden(g.scenario);
        REQUIRE(stored.size() == g.tables.size());
        for (const auto& [label, t] : g.tables) {
            CAPTURE(label);
            REQUIRE(stored.count(label));
            CHECK(stored.at(label) == t);
        }
    }
}

}
