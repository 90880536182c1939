#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "covmin/interval.hpp"

namespace covmin {

/// One covering minimum: an exact rational or a certified interval, with the
/// name of the rule that produced it. Conjectured entries are never used as
/// certificates; they only serve as comparison targets.
struct MinimaEntry {
    std::variant<Rat, Interval> value;
    std::string provenance;
    bool conjectured = false;

    static MinimaEntry exact(const Rat& v, std::string provenance) {
        return {v, std::move(provenance), false};
    }
    static MinimaEntry certified(const Interval& iv, std::string provenance) {
        if (iv.is_point())
            return {iv.lo(), std::move(provenance), false};
        return {iv, std::move(provenance), false};
    }
    static MinimaEntry conjecture(const Rat& v, std::string provenance) {
        return {v, std::move(provenance), true};
    }

    bool is_exact() const { return std::holds_alternative<Rat>(value); }
    Interval interval() const {
        if (auto r = std::get_if<Rat>(&value))
            return Interval(*r);
        return std::get<Interval>(value);
    }
    Rat lower() const { return interval().lo(); }
    Rat upper() const { return interval().hi(); }

    std::string value_str() const { return to_string(interval()); }
};

/// Entries for i = 0..d; entry 0 is always the exact value 0.
class MinimaTable {
public:
    explicit MinimaTable(std::size_t d) : entries_(d + 1) {
        entries_[0] = MinimaEntry::exact(Rat(0), "mu_0 convention");
    }

    std::size_t dim() const { return entries_.size() - 1; }

    void set(std::size_t i, MinimaEntry e) {
        require(i <= dim(), Errc::IndexOutOfRange,
                "index " + std::to_string(i) + " in table of dimension " + std::to_string(dim()));
        require(i != 0 || (e.is_exact() && e.upper() == 0), Errc::InvalidInput, "mu_0 must be 0");
        entries_[i] = std::move(e);
    }
    bool has(std::size_t i) const { return i <= dim() && entries_[i].has_value(); }
    const MinimaEntry& at(std::size_t i) const {
        if (!has(i))
            fail(Errc::MissingIndex, "table has no entry for index " + std::to_string(i));
        return *entries_[i];
    }

    bool any_conjectured() const {
        for (const auto& e : entries_)
            if (e && e->conjectured)
                return true;
        return false;
    }

    /// Monotonicity over the exact entries; intervals satisfy lo <= hi by construction.
    bool is_monotone() const {
        std::optional<Rat> last;
        for (const auto& e : entries_) {
            if (!e || !e->is_exact())
                continue;
            Rat v = e->upper();
            if (last && v < *last)
                return false;
            last = v;
        }
        return true;
    }

private:
    std::vector<std::optional<MinimaEntry>> entries_;
};

} // namespace covmin
