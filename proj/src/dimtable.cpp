#include "dgw/dimtable.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dgw/errors.hpp"

namespace dgw {

std::optional<DimEntry> DimTable::get(Bidegree b) const
{
    auto it = entries_.find(b);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

long DimTable::dim(Bidegree b) const
{
    auto e = get(b);
    return e ? e->dim : 0;
}

bool DimTable::certified(Bidegree b) const
{
    auto e = get(b);
    return e && e->certified;
}

std::vector<int> DimTable::rows() const
{
    std::set<int> s;
    for (const auto& kv : entries_) s.insert(kv.first.n);
    return {s.begin(), s.end()};
}

std::map<int, DimEntry> DimTable::row(int n) const
{
    std::map<int, DimEntry> out;
    for (auto it = entries_.lower_bound({n, std::numeric_limits<int>::min()}); it != entries_.end() && it->first.n == n; ++it)
        out.emplace(it->first.d, it->second);
    return out;
}

std::optional<long> DimTable::total(int n) const
{
    const auto r = row(n);
    if (r.empty()) return closed_below && closed_above ? std::optional<long>(0) : std::nullopt;
    long sum = 0;
    for (const auto& [d, e] : r) {
        if (!e.certified) return std::nullopt;
        sum += e.dim;
    }
    // past the stored range the row must be known zero, or end on a zero
    const bool low_ok = closed_below || r.begin()->second.dim == 0;
    const bool high_ok = closed_above || r.rbegin()->second.dim == 0;
    if (!low_ok || !high_ok) return std::nullopt;
    return sum;
}

bool DimTable::certified_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& kv) { return !kv.second.certified || kv.second.dim == 0; });
}

DimTable DimTable::certified_part() const
{
    DimTable t;
    for (const auto& [b, e] : entries_)
        if (e.certified) t.entries_.emplace(b, e);
    return t;
}

std::string DimTable::to_json() const
{
    nlohmann::json j;
    j["closed_below"] = closed_below;
    j["closed_above"] = closed_above;
    j["entries"] = nlohmann::json::array();
    for (const auto& [b, e] : entries_)
        j["entries"].push_back({{"n", b.n}, {"d", b.d}, {"dim", e.dim}, {"certified", e.certified}});
    return j.dump();
}

DimTable DimTable::from_json(const std::string& text)
{
    DimTable t;
    try {
        auto j = nlohmann::json::parse(text);
        t.closed_below = j.at("closed_below").get<bool>();
        t.closed_above = j.at("closed_above").get<bool>();
        for (const auto& e : j.at("entries"))
            t.set({e.at("n").get<int>(), e.at("d").get<int>()}, e.at("dim").get<long>(), e.at("certified").get<bool>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("DimTable JSON: ") + e.what());
    }
    return t;
}

std::string DimTable::to_tsv() const
{
    std::set<int> ds;
    for (const auto& kv : entries_) ds.insert(kv.first.d);
    std::ostringstream os;
    os << "n\\d";
    for (int d : ds) os << '\t' << d;
    os << '\n';
    for (int n : rows()) {
        os << n;
        const auto r = row(n);
        for (int d : ds) {
            os << '\t';
            auto it = r.find(d);
            if (it == r.end()) continue;
            os << it->second.dim << (it->second.certified ? "" : "?");
        }
        os << '\n';
    }
    return os.str();
}

std::string DimTable::to_text() const
{
    std::ostringstream os;
    for (int n : rows()) {
        os << "H^" << n << ":";
        for (const auto& [d, e] : row(n))
            if (e.dim != 0 || !e.certified) os << "  (" << d << ")" << e.dim << (e.certified ? "" : "?");
        auto t = total(n);
        os << "   total " << (t ? std::to_string(*t) : std::string("n/a")) << '\n';
    }
    return os.str();
}

}  // namespace dgw
