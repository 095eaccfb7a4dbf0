#ifndef DGW_SCENARIOS_HPP
#define DGW_SCENARIOS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgw/algebra.hpp"
#include "dgw/dimtable.hpp"

namespace dgw {

struct Assertion {
    std::string desc;
    std::string expected;
    std::string computed;
    std::string provenance;  // PAPER, DERIVED or TRIVIAL
    bool pass = false;
};

struct ScenarioReport {
    std::string name;
    std::string conclusion;
    Window window;
    std::vector<std::string> inputs;  // presentation text of every input
    std::map<std::string, DimTable> tables;
    std::vector<Assertion> assertions;
    double wall_ms = 0;

    bool pass() const;
    /// {name, conclusion, window, inputs, assertions, tables, pass, wall_ms}
    std::string to_json(bool with_tables = false) const;
    std::string to_text() const;
};

/// Registry names in sorted order.
const std::vector<std::string>& scenario_names();
/// Smallest window a scenario accepts.
Window minimum_window(const std::string& name);
Window default_window(const std::string& name);

/// Runs one registry scenario. Throws InputError for an unknown name or a
/// window below the scenario's minimum.
ScenarioReport run_scenario(const std::string& name, const std::optional<Window>& window = std::nullopt);

/// Directory holding golden reports: $DGW_GOLDEN_DIR when set, otherwise the
/// directory configured at build time.
std::string golden_dir();

/// Tables frozen in golden/<scenario>.json, keyed by label.
std::map<std::string, DimTable> load_golden(const std::string& scenario);
void save_golden(const std::string& dir, const std::string& scenario, const std::string& provenance,
                 const std::map<std::string, DimTable>& tables);

/// Presentation source shared by the scenarios (rings A, B, C, T and friends).
const std::string& scenario_source();

}  // namespace dgw

#endif
