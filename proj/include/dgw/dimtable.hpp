#ifndef DGW_DIMTABLE_HPP
#define DGW_DIMTABLE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgw/presentation.hpp"

namespace dgw {

struct DimEntry {
    long dim = 0;
    bool certified = false;
    friend bool operator==(const DimEntry&, const DimEntry&) = default;
};

/// Dimensions per bidegree with a certification flag. Entries that were
/// computed are stored even when zero; `closed_below` / `closed_above` record
/// that every weight outside the stored range of a row is known to be zero.
class DimTable {
public:
    void set(Bidegree b, long dim, bool certified) { entries_[b] = {dim, certified}; }
    std::optional<DimEntry> get(Bidegree b) const;
    long dim(Bidegree b) const;  // 0 when absent
    bool certified(Bidegree b) const;

    const std::map<Bidegree, DimEntry>& entries() const noexcept { return entries_; }
    std::vector<int> rows() const;
    std::map<int, DimEntry> row(int n) const;  // weight -> entry

    bool closed_below = false;
    bool closed_above = false;

    /// Sum over internal weight of row n, reported only when every stored
    /// entry of the row is certified and each end of the row is either
    /// closed or a zero entry.
    std::optional<long> total(int n) const;

    /// True when every certified entry is zero.
    bool certified_zero() const;
    /// Certified entries only.
    DimTable certified_part() const;

    std::string to_json() const;
    static DimTable from_json(const std::string& text);
    /// Rows n, columns d; uncertified entries carry a trailing '?'.
    std::string to_tsv() const;
    std::string to_text() const;

    friend bool operator==(const DimTable&, const DimTable&) = default;

private:
    std::map<Bidegree, DimEntry> entries_;
};

}  // namespace dgw

#endif
