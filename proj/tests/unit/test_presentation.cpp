#include <doctest.h>

#include <random>

#include "dgw/algebra.hpp"
#include "dgw/errors.hpp"
#include "dgw/module.hpp"
#include "dgw/presentation.hpp"
#include "dgw/scenarios.hpp"

using namespace dgw;

namespace {

const char* kA = "ring A { gen x (0,1); gen y (0,1); rel x*y; }\n";

}  // namespace

TEST_SUITE("presentation") {

TEST_CASE("A = k[x,y]/(xy)")
{
    auto doc = parse(kA);
    const auto* a = doc.ring("A");
    REQUIRE(a);
    REQUIRE(a->components.size() == 1);
    CHECK(a->components[0].gens.size() == 2);
    CHECK(a->components[0].rels.size() == 1);
    CHECK_FALSE(a->has_differential());
}

TEST_CASE("k[t] with t in degree -2")
{
    auto doc = parse("ring T { gen t (-2,1); }");
    const auto* t = doc.ring("T");
    REQUIRE(t);
    CHECK(t->components[0].gens[0].deg == Bidegree{-2, 1});
    CHECK_NOTHROW(compile_ring(*t, Window{}));
}

TEST_CASE("rejected sources")
{
    CHECK_THROWS_AS(parse("ring A { gen x (0,1); gen y (0,1); rel x*y + y; }"), ParseError);
    CHECK_THROWS_AS(parse("ring A { gen x (1,1); }"), ParseError);
    CHECK_THROWS_AS(parse("ring A { gen x (0,0); }"), ParseError);
    CHECK_THROWS_AS(parse("ring A { gen x (0,1); gen x (0,2); }"), ParseError);
    CHECK_THROWS_AS(parse("ring A { gen x (0,1); rel z; }"), ParseError);
    CHECK_THROWS_AS(parse("ring A { gen x (0,1); diff x = x; }"), ParseError);
    CHECK_THROWS_AS(parse("ring A { gen x (0,1) }"), ParseError);
    CHECK_THROWS_AS(parse(std::string(kA) + "ring A { gen z (0,1); }"), ParseError);
    CHECK_THROWS_AS(parse(std::string(kA) + "module M over Q { gen m (0,0); }"), ParseError);
    CHECK_THROWS_AS(parse("dgring D { gen x (0,1); gen e (-1,1); diff e = x^2; }"), ParseError);
    CHECK_THROWS_AS(parse("dgring D { gen x (0,1); gen e (-1,1); gen a (-2,2); diff e = x; diff a = e*x; }"),
                    ParseError);
}

TEST_CASE("parse errors carry the position")
{
    try {
        parse("ring A {\n  gen x (0,1);\n  gen y (0 1);\n}");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 1);
    }
}

TEST_CASE("koszul(A; x^2)")
{
    auto doc = parse(std::string(kA) + "dgring B = koszul(A; x^2);");
    const auto& c = doc.ring("B")->components[0];
    REQUIRE(c.gens.size() == 3);
    CHECK(c.gens[2].deg == Bidegree{-1, 2});
    REQUIRE(c.diff[2].size() == 1);
    CHECK(c.diff[2].begin()->first == Exponents{2, 0, 0});
    CHECK(c.diff[2].begin()->second == Fp(1));
}

TEST_CASE("koszul on two elements")
{
    auto doc = parse(std::string(kA) + "dgring B = koszul(A; x, y^2);");
    const auto& c = doc.ring("B")->components[0];
    REQUIRE(c.gens.size() == 4);
    CHECK(c.gens[3].deg == Bidegree{-1, 2});
    REQUIRE(c.diff[3].size() == 1);
    CHECK(c.diff[3].begin()->first == Exponents{0, 2, 0, 0});
    auto b = compile_ring(*doc.ring("B"), Window{-3, 3, 6});
    CHECK_FALSE(b->check());
}

TEST_CASE("koszul on no elements is the ring itself")
{
    auto doc = parse(kA);
    auto k = koszul(*doc.ring("A"), {}, "A");
    CHECK(k == *doc.ring("A"));
}

TEST_CASE("trivial extension has H^-1 = M")
{
    auto doc = parse(std::string(kA) + "module M = quotient(A; y);\ndgring T = trivext(A, M);");
    const Window w{-3, 3, 8};
    auto te = compile_ring(*doc.ring("T"), w);
    auto m = compile_module(*doc.module("M"), compile_ring(*doc.ring("A"), w));
    auto h = cohomology_table(algebra_as_module(te), w);
    for (int d = 0; d + 1 <= w.d_max; ++d) CHECK(h.dim({-1, d + 1}) == static_cast<long>(m.dim({0, d})));
    CHECK(h.dim({-1, 0}) == 0);
}

TEST_CASE("product rings and components")
{
    auto doc = parse(
        "ring R { component { gen t (0,1); } component { gen t (0,1); rel t^2; } }\n"
        "module M over R { gen m (0,0) @2; }");
    const auto* r = doc.ring("R");
    REQUIRE(r->components.size() == 2);
    CHECK(doc.module("M")->gens[0].component == 1);
    CHECK_THROWS_AS(parse("ring R { component { gen t (0,1); } }\nmodule M over R { gen m (0,0) @3; }"), ParseError);
}

TEST_CASE("parse after print is the identity")
{
    for (const std::string src : {scenario_source(), std::string(kA) + "module N over A { gen a (0,0); gen b (-1,2); rel y*a; rel 2*x*b; }"}) {
        auto doc = parse(src);
        auto again = parse(print(doc));
        CHECK(again.rings == doc.rings);
        CHECK(again.modules == doc.modules);
        CHECK(print(again) == print(doc));
    }
}

TEST_CASE("parse after print on random presentations")
{
    std::mt19937 rng(99);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int trial = 0; trial < 40; ++trial) {
        std::string src = "ring R { ";
        const int ngens = pick(1, 3);
        const char* names[] = {"a", "b", "c"};
        std::vector<int> even;
        for (int g = 0; g < ngens; ++g) {
            const int n = -pick(0, 2);
            if (n % 2 == 0) even.push_back(g);
            src += std::string("gen ") + names[g] + " (" + std::to_string(n) + "," + std::to_string(pick(1, 3)) + "); ";
        }
        // odd generators already square to zero
        for (int k = even.empty() ? 0 : pick(0, 2); k > 0; --k)
            src += std::string("rel ") + names[even[pick(0, static_cast<int>(even.size()) - 1)]] + "^" + std::to_string(pick(2, 3)) + "; ";
        src += "}\nmodule M over R { gen m (0,0); ";
        if (pick(0, 1)) src += std::string("rel ") + names[pick(0, ngens - 1)] + "*m; ";
        src += "}\n";
        auto doc = parse(src);
        auto again = parse(print(doc));
        CHECK(again.rings == doc.rings);
        CHECK(again.modules == doc.modules);
    }
}

TEST_CASE("h0 presentation of the Koszul complex")
{
    auto doc = parse(std::string(kA) + "dgring B = koszul(A; x^2);");
    auto h0 = h0_presentation(*doc.ring("B"));
    REQUIRE(h0);
    REQUIRE(h0->components.size() == 1);
    CHECK(h0->components[0].gens.size() == 2);
    CHECK(h0->components[0].rels.size() == 2);
}

}
