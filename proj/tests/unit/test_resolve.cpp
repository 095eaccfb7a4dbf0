#include <doctest.h>

#include "dgw/algebra.hpp"
#include "dgw/errors.hpp"
#include "dgw/module.hpp"
#include "dgw/resolve.hpp"
#include "oracle.hpp"

using namespace dgw;

namespace {

const char* kSrc = R"(
ring A { gen x (0,1); gen y (0,1); rel x*y; }
ring C { gen x (0,1); gen y (0,1); rel x*y; rel x^2; }
dgring B = koszul(A; x^2);
module M = quotient(A; y);
module k = quotient(A; x, y);
module Cy = quotient(C; y);
module S = inflate(Cy; B);
module P over A { gen a (0,0); gen b (0,1); rel y*a; rel x*b; }
module Q over A { gen b (0,1); gen a (0,0); rel x*b; rel y*a; }
)";

struct Fixture {
    Document doc = parse(kSrc);
    Window w{-8, 8, 10};
    AlgebraPtr ring(const std::string& n) { return compile_ring(*doc.ring(n), w); }
    DGModule module(const std::string& n) { return compile_module(*doc.module(n), ring(doc.module(n)->ring.name)); }
};

std::map<Bidegree, int> counts(const SemifreeResolution& r)
{
    std::map<Bidegree, int> out;
    for (const auto& g : r.generators()) ++out[g.deg];
    return out;
}

std::vector<int> exps(const RingPresentation& r, const std::string& name, int power)
{
    std::vector<int> e(r.components[0].gens.size(), 0);
    e[*r.components[0].find(name)] = power;
    return e;
}

}  // namespace

TEST_SUITE("resolve") {

TEST_CASE_FIXTURE(Fixture, "A/(y) is resolved by A <-y- A <-x- A <-y- ...")
{
    auto a = ring("A");
    auto r = minimal_semifree(module("M"));
    const auto x = *a->generator_basis(*a->generator_index(0, "x"));
    const auto y = *a->generator_basis(*a->generator_index(0, "y"));
    const auto& gens = r.generators();
    REQUIRE(gens.size() == static_cast<std::size_t>(w.d_max + 1));
    for (std::size_t k = 0; k < gens.size(); ++k) {
        CHECK(gens[k].deg == Bidegree{-static_cast<int>(k), static_cast<int>(k)});
        if (k == 0) {
            CHECK(gens[k].diff.empty());
            continue;
        }
        REQUIRE(gens[k].diff.size() == 1);
        CHECK(gens[k].diff[0].gen == k - 1);
        CHECK(gens[k].diff[0].basis_id == (k % 2 ? y : x));
    }
    CHECK(verify_resolution(r).ok());
}

TEST_CASE_FIXTURE(Fixture, "a free module resolves itself")
{
    auto a = ring("A");
    auto r = minimal_semifree(algebra_as_module(a));
    REQUIRE(r.generators().size() == 1);
    CHECK(r.generators()[0].diff.empty());
    CHECK(r.generators()[0].deg == Bidegree{0, 0});
    // the augmentation is an isomorphism F = A -> A in every bidegree
    for (int d = 0; d <= w.d_max; ++d) {
        const auto m = r.augmentation({0, d});
        CHECK(m.rows() == m.cols());
        CHECK(rank(m) == m.rows());
    }
    CHECK(verify_resolution(r).ok());
}

TEST_CASE_FIXTURE(Fixture, "Betti numbers agree with the degreewise oracle")
{
    struct Case {
        const char* module;
        const char* ring;
        std::vector<std::pair<std::string, int>> rels;
    };
    const Case cases[] = {
        {"Cy", "C", {{"y", 1}}},
        {"M", "A", {{"y", 1}}},
        {"k", "A", {{"x", 1}, {"y", 1}}},
        {"S", "B", {{"y", 1}, {"x", 2}}},
    };
    const int n_stop = -6;
    for (const auto& c : cases) {
        CAPTURE(c.module);
        auto r = minimal_semifree(module(c.module));
        CHECK(verify_resolution(r).ok());
        const auto& rp = *doc.ring(c.ring);
        const oracle::Ring ring(rp, r.cap());
        std::vector<std::vector<int>> rels;
        for (const auto& [g, p] : c.rels) rels.push_back(exps(rp, g, p));
        const oracle::Module om(ring, 0, rels);
        auto want = oracle::betti(ring, om, n_stop);
        auto got = counts(r);
        std::erase_if(got, [&](const auto& kv) { return kv.first.n < n_stop; });
        std::map<Bidegree, int> want_b;
        for (const auto& [k, v] : want) want_b[{k.first, k.second}] = v;
        CHECK(got == want_b);
    }
}

TEST_CASE_FIXTURE(Fixture, "C/y: one generator in each of the first three steps, then growth")
{
    auto r = minimal_semifree(module("Cy"));
    std::map<int, int> per_step;
    for (const auto& g : r.generators()) ++per_step[-g.deg.n];
    CHECK(per_step[0] == 1);
    CHECK(per_step[1] == 1);
    CHECK(per_step[2] == 1);
    CHECK(per_step[4] > per_step[2]);
}

TEST_CASE_FIXTURE(Fixture, "Betti numbers do not depend on the order of presentation generators")
{
    auto p = minimal_semifree(module("P"));
    auto q = minimal_semifree(module("Q"));
    CHECK(counts(p) == counts(q));
    CHECK(verify_resolution(p).ok());
    CHECK(verify_resolution(q).ok());
}

TEST_CASE_FIXTURE(Fixture, "verify_resolution catches a unit in the differential")
{
    auto m = module("M");
    auto base = minimal_semifree(m);
    auto gens = base.generators();
    const auto& a = m.ring();
    // a contractible pair u, v with d(v) = u
    ResolutionGenerator u{"u", {-1, 3}, 0, {}, Vector(m.dim({-1, 3}))};
    ResolutionGenerator v{"v", {-2, 3}, 0, {{Fp(1), a.unit(0), gens.size()}}, Vector(m.dim({-2, 3}))};
    gens.push_back(u);
    gens.push_back(v);
    auto r = assemble_resolution(m, gens);
    auto rep = verify_resolution(r);
    CHECK_FALSE(rep.minimal);
    CHECK(rep.semifree);
    CHECK(rep.chain_map);
    CHECK(rep.acyclic);
    CHECK_FALSE(rep.ok());
}

TEST_CASE_FIXTURE(Fixture, "verify_resolution catches a missing augmentation")
{
    auto m = module("M");
    auto gens = minimal_semifree(m).generators();
    gens[0].aug.assign(gens[0].aug.size(), Fp{});
    auto rep = verify_resolution(assemble_resolution(m, gens));
    CHECK(rep.chain_map);
    CHECK_FALSE(rep.acyclic);
    CHECK_FALSE(rep.ok());
}

TEST_CASE_FIXTURE(Fixture, "hand-built resolutions must be ordered and homogeneous")
{
    auto m = module("M");
    auto gens = minimal_semifree(m).generators();
    gens[1].diff[0].gen = 2;
    CHECK_THROWS_AS(assemble_resolution(m, gens), InputError);
    gens = minimal_semifree(m).generators();
    gens[2].diff[0].basis_id = gens[1].diff[0].basis_id == 0 ? 1 : 0;
    CHECK_THROWS_AS(assemble_resolution(m, gens), InputError);
}

TEST_CASE_FIXTURE(Fixture, "modules not bounded below are refused")
{
    auto t = compile_ring(parse("ring T { gen t (-2,1); }").rings[0], w);
    CHECK_THROWS_AS(minimal_semifree(laurent_module(t)), InputError);
}

TEST_CASE_FIXTURE(Fixture, "frontier and quiet degrees")
{
    auto r = minimal_semifree(module("M"));
    REQUIRE(r.frontier());
    CHECK(*r.frontier() == -(r.cap() - r.quiet_band() + 1));
    CHECK(r.degree_quiet(*r.frontier() + 1));
    CHECK_FALSE(r.degree_quiet(*r.frontier()));
    CHECK_FALSE(r.complete());
}

}
