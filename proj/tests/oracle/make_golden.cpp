// Writes the golden tables for the scenarios with derived expectations.
// Usage: make_golden <dir>

#include <iostream>

#include "dgw/scenarios.hpp"
#include "golden_tables.hpp"

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: make_golden <dir>\n";
        return 2;
    }
    for (const auto& g : golden::compute_all()) {
        dgw::save_golden(argv[1], g.scenario, golden::kProvenance, g.tables);
        std::cout << "wrote " << g.scenario << " (" << g.tables.size() << " tables)\n";
    }
    return 0;
}
