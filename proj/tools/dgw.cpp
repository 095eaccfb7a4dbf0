// Command-line front end: compute derived tables from presentation files and
// run the scenario registry.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgw/algebra.hpp"
#include "dgw/derived.hpp"
#include "dgw/errors.hpp"
#include "dgw/module.hpp"
#include "dgw/presentation.hpp"
#include "dgw/scenarios.hpp"

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kCompute = 3 };

struct Options {
    unsigned char_p = dgw::Field::kDefaultCharacteristic;
    std::string window;
    std::string format = "table";
    std::string file;
    std::string op;
    std::vector<std::string> args;
    std::string target;
    std::string scenario;
    bool tables = false;
};

std::optional<dgw::Window> parse_window(const std::string& s)
{
    if (s.empty()) return std::nullopt;
    dgw::Window w;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> w.n_min >> c1 >> w.n_max >> c2 >> w.d_max) || c1 != ':' || c2 != ':' || !is.eof())
        throw dgw::InputError("--window expects nmin:nmax:dmax, got '" + s + "'");
    w.check();
    return w;
}

void print_table(const dgw::DimTable& t, const std::string& title, const std::string& format)
{
    if (format == "json") {
        std::cout << t.to_json() << '\n';
    } else if (format == "tsv") {
        std::cout << t.to_tsv();
    } else {
        std::cout << title << '\n' << t.to_text();
    }
}

class Entities {
public:
    Entities(const dgw::Document& doc, const dgw::Window& w) : doc_(doc), w_(w) {}

    dgw::AlgebraPtr ring(const dgw::RingPresentation& p)
    {
        for (const auto& [pres, alg] : rings_)
            if (pres == p) return alg;
        rings_.emplace_back(p, dgw::compile_ring(p, w_));
        return rings_.back().second;
    }

    const dgw::ModulePresentation& module_pres(const std::string& name) const
    {
        const auto* m = doc_.module(name);
        if (!m) throw dgw::InputError("no module named '" + name + "' in the input");
        return *m;
    }

    dgw::DGModule module(const std::string& name)
    {
        const auto& p = module_pres(name);
        return dgw::compile_module(p, ring(p.ring));
    }

    // A ring is read as the free module of rank one over itself.
    dgw::DGModule any(const std::string& name)
    {
        if (const auto* r = doc_.ring(name)) return dgw::algebra_as_module(ring(*r));
        return module(name);
    }

private:
    const dgw::Document& doc_;
    dgw::Window w_;
    std::vector<std::pair<dgw::RingPresentation, dgw::AlgebraPtr>> rings_;
};

int run_compute(const Options& o)
{
    const auto doc = dgw::parse_file(o.file);
    const dgw::Window w = parse_window(o.window).value_or(dgw::Window{});
    Entities ents(doc, w);
    dgw::DimTable t;
    std::string title;
    if (o.op == "H") {
        if (o.target.empty()) throw dgw::InputError("--op H needs --target");
        t = dgw::cohomology_table(ents.any(o.target), w);
        title = "H(" + o.target + ")";
    } else if (o.op == "F" || o.op == "G") {
        if (o.target.empty()) throw dgw::InputError("--op " + o.op + " needs --target");
        const auto m = ents.any(o.target);
        t = o.op == "F" ? dgw::reduction_F(m, w) : dgw::coreduction_G(m, w);
        title = o.op + "(" + o.target + ")";
    } else {
        if (o.args.size() != 2) throw dgw::InputError("--op " + o.op + " needs --args M N");
        const auto m = ents.any(o.args[0]);
        const auto n = ents.any(o.args[1]);
        if (m.algebra() != n.algebra())
            throw dgw::InputError("'" + o.args[0] + "' and '" + o.args[1] + "' are not over the same ring");
        t = o.op == "ext" ? dgw::ext_table(m, n, w) : dgw::tor_table(m, n, w);
        title = (o.op == "ext" ? "Ext(" : "Tor(") + o.args[0] + ", " + o.args[1] + ")";
    }
    print_table(t, title, o.format);
    return kPass;
}

int run_scenarios(const Options& o)
{
    std::vector<std::string> names;
    if (o.scenario == "all") {
        names = dgw::scenario_names();
    } else {
        names.push_back(o.scenario);
    }
    const auto w = parse_window(o.window);
    std::vector<dgw::ScenarioReport> reports;
    for (const auto& n : names) reports.push_back(dgw::run_scenario(n, w));

    bool ok = true;
    for (const auto& r : reports) ok = ok && r.pass();
    if (o.format == "json") {
        auto j = nlohmann::ordered_json::array();
        for (const auto& r : reports) j.push_back(nlohmann::ordered_json::parse(r.to_json(o.tables)));
        std::cout << (reports.size() == 1 ? j[0] : j).dump(2) << '\n';
    } else if (o.format == "tsv") {
        std::cout << "scenario\tdesc\texpected\tcomputed\tprovenance\tpass\n";
        for (const auto& r : reports)
            for (const auto& a : r.assertions)
                std::cout << r.name << '\t' << a.desc << '\t' << a.expected << '\t' << a.computed << '\t' << a.provenance
                          << '\t' << (a.pass ? "1" : "0") << '\n';
    } else {
        for (const auto& r : reports) {
            std::cout << r.to_text();
            if (o.tables)
                for (const auto& [label, t] : r.tables) std::cout << "  " << label << '\n' << t.to_text();
        }
        if (reports.size() > 1) {
            std::size_t passed = 0;
            for (const auto& r : reports) passed += r.pass();
            std::cout << passed << "/" << reports.size() << " scenarios passed\n";
        }
    }
    return ok ? kPass : kFail;
}

int run_list()
{
    for (const auto& n : dgw::scenario_names()) {
        const auto w = dgw::minimum_window(n);
        std::cout << n << "\tminimum window " << w.n_min << ':' << w.n_max << ':' << w.d_max << '\n';
    }
    return kPass;
}

int run_validate(const Options& o)
{
    const auto doc = dgw::parse_file(o.file);
    const dgw::Window w = parse_window(o.window).value_or(dgw::Window{});
    Entities ents(doc, w);
    for (const auto& r : doc.rings) {
        const auto a = ents.ring(r);
        std::cout << "ring " << r.name << ": " << a->size() << " basis elements up to weight " << w.d_max << '\n';
    }
    for (const auto& m : doc.modules) {
        const auto mod = ents.module(m.name);
        std::size_t dim = 0;
        for (const auto& b : mod.bidegrees()) dim += mod.dim(b);
        std::cout << "module " << m.name << " over " << m.ring.name << ": " << dim << " basis elements\n";
    }
    std::cout << "ok\n";
    return kPass;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Derived functors over non-positive DG-rings, computed in a finite window."};
    app.require_subcommand(1);
    Options o;
    app.add_option("--char", o.char_p, "Characteristic of the ground field")->capture_default_str();
    app.add_option("--window", o.window, "Window nmin:nmax:dmax (default -8:8:12)");
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"table", "json", "tsv"}))
        ->capture_default_str();

    auto* compute = app.add_subcommand("compute", "Compute a table for entities declared in a file");
    compute->add_option("file", o.file, "Presentation file")->required()->check(CLI::ExistingFile);
    compute->add_option("--op", o.op, "Operation")->required()->check(CLI::IsMember({"ext", "tor", "F", "G", "H"}));
    compute->add_option("--args", o.args, "Two module names for ext and tor")->delimiter(',');
    compute->add_option("--target", o.target, "Ring or module for H, F and G");

    auto* scenario = app.add_subcommand("scenario", "Run registry scenarios");
    scenario->add_option("name", o.scenario, "Scenario name or 'all'")->required();
    scenario->add_flag("--tables", o.tables, "Include the computed tables");

    auto* list = app.add_subcommand("list", "List registry scenarios");
    auto* validate = app.add_subcommand("validate", "Parse and compile every entity in a file");
    validate->add_option("file", o.file, "Presentation file")->required()->check(CLI::ExistingFile);

    for (auto* s : {compute, scenario, list, validate}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInput;
    }

    try {
        dgw::Field::set_characteristic(o.char_p);
        if (*compute) return run_compute(o);
        if (*scenario) return run_scenarios(o);
        if (*list) return run_list();
        return run_validate(o);
    } catch (const dgw::ParseError& e) {
        std::cerr << o.file << ':' << e.what() << '\n';
        return kInput;
    } catch (const dgw::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const dgw::ComputeError& e) {
        std::cerr << "computation failed: " << e.what() << '\n';
        return kCompute;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << '\n';
        return kCompute;
    }
}
