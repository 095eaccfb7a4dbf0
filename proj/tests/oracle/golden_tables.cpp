#include "golden_tables.hpp"

#include "dgw/presentation.hpp"
#include "dgw/scenarios.hpp"
#include "oracle.hpp"

namespace golden {

namespace {

dgw::DimTable to_table(const oracle::Table& t)
{
    dgw::DimTable out;
    for (const auto& [b, e] : t) out.set({b.first, b.second}, e.dim, e.certified);
    return out;
}

oracle::Table rows(const oracle::Table& t, int lo, int hi)
{
    oracle::Table out;
    for (const auto& [b, e] : t)
        if (b.first >= lo && b.first <= hi) out.emplace(b, e);
    return out;
}

std::vector<int> exps(const dgw::RingPresentation& r, std::size_t comp, const std::string& name, int power)
{
    std::vector<int> e(r.components[comp].gens.size(), 0);
    e[*r.components[comp].find(name)] = power;
    return e;
}

}  // namespace

std::vector<Golden> compute_all()
{
    const auto doc = dgw::parse(dgw::scenario_source());
    std::vector<Golden> out;

    const auto& bp = *doc.ring("B");
    const oracle::Ring b(bp, kWeightCap);
    out.push_back({"koszul_tables", {{"H(B)", to_table(oracle::ring_cohomology(b, -8, 8))}}});

    const oracle::Module c(b, 0, {exps(bp, 0, "x", 2)});
    out.push_back({"forgetful_not_full_witness",
                   {{"F(S(H0(B)))", to_table(rows(oracle::derived_tensor(b, c, c, -2, 0), -2, 0))}}});

    Golden descent{"descent_torext", {}};
    for (const auto& [ring, suffix] : {std::pair{"R", ""}, std::pair{"Rt", "/t"}}) {
        const oracle::Ring r(*doc.ring(ring), kWeightCap);
        const oracle::Module m(r, 0, {}), n(r, 1, {});
        const std::string tor = std::string("Tor^R") + suffix, ext = std::string("Ext_R") + suffix;
        const std::string mn = *suffix ? "(M/t,N/t)" : "(M,N)", nm = *suffix ? "(N/t,M/t)" : "(N,M)";
        descent.tables[tor + mn] = to_table(oracle::as_tor(oracle::derived_tensor(r, m, n, -8, 0)));
        descent.tables[tor + nm] = to_table(oracle::as_tor(oracle::derived_tensor(r, n, m, -8, 0)));
        descent.tables[ext + mn] = to_table(oracle::derived_hom(r, m, n, 0, 8));
        descent.tables[ext + nm] = to_table(oracle::derived_hom(r, n, m, 0, 8));
    }
    out.push_back(std::move(descent));
    return out;
}

}  // namespace golden
