#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covmin/families.hpp"
#include "covmin/minima_table.hpp"
#include "covmin/polytope.hpp"

namespace covmin {

enum class Method {
    ProjectionThm,
    IntersectionThm,
    KlLemma,
    CorTerminalProj,
    PropWeighted,
    CorTerminalInt,
    Monotone,
};

inline std::string method_name(Method m) {
    switch (m) {
    case Method::ProjectionThm: return "PROJECTION_THM";
    case Method::IntersectionThm: return "INTERSECTION_THM";
    case Method::KlLemma: return "KL_LEMMA";
    case Method::CorTerminalProj: return "COR_TERMINAL_PROJ";
    case Method::PropWeighted: return "PROP_WEIGHTED";
    case Method::CorTerminalInt: return "COR_TERMINAL_INT";
    case Method::Monotone: return "MONOTONE";
    }
    return "?";
}

/// An upper bound on mu_i. Only the upper end of value certifies anything;
/// reports built from conjectured inputs are flagged and must not be used as
/// certificates.
struct BoundReport {
    std::size_t i = 0;
    Interval value;
    Method method = Method::Monotone;
    std::string witness;
    bool conjectured = false;

    Rat upper() const { return value.hi(); }
};

/// Covering radius of a full-dimensional body with respect to Z^dim, as an
/// enclosure. Used wherever a bound needs covering radii of slices or projections.
using CoverFn = std::function<Interval(const Polytope&)>;

/// Projection theorem: mu_i(K) <= max_j mu_j(pi_V K) + mu_{i-j}(K ∩ V^perp),
/// from the tables of the projection and the slice. Requires 0 in K, which the
/// caller asserts through origin_in_body.
inline BoundReport projection_bound(const MinimaTable& proj, const MinimaTable& slice, std::size_t i,
                                    bool origin_in_body = true) {
    require(origin_in_body, Errc::OriginMissing, "projection bound needs the origin in the body");
    auto [entry, j] = direct_sum_entry(proj, slice, i);
    BoundReport r;
    r.i = i;
    r.value = entry.interval();
    r.method = Method::ProjectionThm;
    r.witness = "j=" + std::to_string(j);
    r.conjectured = entry.conjectured;
    return r;
}

/// Intersection theorem in lattice coordinates (lattice Z^d): the maximum
/// over |I| = i of the covering radius of K ∩ L_I. Slices that are not
/// i-dimensional violate the hypothesis and raise SliceDegenerate.
inline BoundReport intersection_bound(const Polytope& k, std::size_t i, const CoverFn& cover) {
    const std::size_t d = k.dim();
    require(i >= 1 && i <= d, Errc::IndexOutOfRange, "index outside 1..d");
    std::optional<Interval> best;
    IndexSet arg;
    for (const auto& idx : subsets_of_size(d, i)) {
        auto s = coord_slice(k, idx);
        if (!s.full_dimensional)
            fail(Errc::SliceDegenerate, "slice " + idx.str() + " is not " + std::to_string(i) + "-dimensional");
        Interval v = cover(s.body);
        if (!best || best->hi() < v.hi())
            arg = idx;
        best = best ? max(*best, v) : v;
    }
    return {i, *best, Method::IntersectionThm, "I=" + arg.str(), false};
}

/// Variant taking precomputed slice covering radii in subsets_of_size order.
inline BoundReport intersection_bound(std::size_t d, std::size_t i, const std::vector<Interval>& slice_values) {
    auto subsets = subsets_of_size(d, i);
    require(slice_values.size() == subsets.size(), Errc::DimensionMismatch, "one value per index set");
    std::size_t arg = 0;
    Interval best = slice_values[0];
    for (std::size_t k = 1; k < subsets.size(); ++k) {
        if (best.hi() < slice_values[k].hi())
            arg = k;
        best = max(best, slice_values[k]);
    }
    return {i, best, Method::IntersectionThm, "I=" + subsets[arg].str(), false};
}

/// Kannan-Lovasz chain mu_{k+1} <= mu_k + lambda_{d-k}(K - K) from a known
/// mu_base up to mu_target. lambda holds lambda_1..lambda_d.
inline BoundReport kl_bound(const MinimaEntry& base, std::size_t base_index, const std::vector<Interval>& lambda,
                            std::size_t target) {
    const std::size_t d = lambda.size();
    require(base_index >= 1 && base_index <= target, Errc::IndexOutOfRange, "KL chain indices");
    Interval v = base.interval();
    for (std::size_t k = base_index; k < target; ++k) {
        if (k >= d)
            fail(Errc::MissingLambda, "missing lambda_" + std::to_string(d - k));
        v = v + lambda[d - k - 1];
    }
    return {target, v, Method::KlLemma, "from mu_" + std::to_string(base_index), base.conjectured};
}

inline BoundReport kl_bound(const MinimaEntry& base, std::size_t base_index, const std::vector<Rat>& lambda,
                            std::size_t target) {
    std::vector<Interval> iv;
    for (const auto& l : lambda)
        iv.emplace_back(l);
    return kl_bound(base, base_index, iv, target);
}

/// Successive use of the projection theorem on T_d:
/// mu_i(T_d) <= 1/2 + sum_{j=0}^{i-2} (d-j)/(d-j+1).
inline Rat terminal_projection_bound(std::size_t d, std::size_t i) {
    require(i >= 2 && i <= d, Errc::IndexOutOfRange, "terminal projection bound needs 2 <= i <= d");
    Rat s(1, 2);
    for (std::size_t j = 0; j + 2 <= i; ++j)
        s += Rat(static_cast<long>(d - j), static_cast<long>(d - j + 1));
    return s;
}

/// (i/2)(1 + (d-i)/(d+1)).
inline Rat terminal_intersection_bound(std::size_t d, std::size_t i) {
    require(i >= 1 && i <= d, Errc::IndexOutOfRange, "terminal intersection bound needs 1 <= i <= d");
    return Rat(static_cast<long>(i), 2) * (1 + Rat(static_cast<long>(d - i), static_cast<long>(d + 1)));
}

/// KL chain for T_d from mu_1 = 1/2 with every lambda_j = d/(d+1).
inline Rat terminal_kl_bound(std::size_t d, std::size_t i) {
    require(i >= 1 && i <= d, Errc::IndexOutOfRange, "terminal KL bound needs 1 <= i <= d");
    return Rat(1, 2) + Rat(static_cast<long>((i - 1) * d), static_cast<long>(d + 1));
}

/// F(I) = 2 C L(I) - L(I)^2 - Q(I) with C = sum 1/w_k, L(I) = sum_{j in I} 1/w_j,
/// Q(I) = sum_{j in I} 1/w_j^2; twice the numerator of the slice covering radius.
inline Rat weighted_exchange_value(const WeightVector& w, const IndexSet& idx) {
    Rat c(0), l(0), q(0);
    for (const auto& x : w.values())
        c += 1 / x;
    for (auto k : idx) {
        Rat r = 1 / w[k + 1];
        l += r;
        q += r * r;
    }
    return 2 * c * l - l * l - q;
}

struct WeightedBound {
    Rat value;
    bool maximizer_check = false;
    IndexSet argmax;  ///< lexicographically first index set of maximal slice value
};

/// Intersection bound for sorted weights, with an exhaustive check that the
/// first i coordinates give the largest slice.
inline WeightedBound weighted_intersection_bound(const WeightVector& w, std::size_t i) {
    require(w.sorted(), Errc::UnsortedWeights, "weights " + w.str() + " are not sorted ascending");
    const std::size_t d = w.dim();
    require(i >= 1 && i < d, Errc::IndexOutOfRange, "weighted intersection bound needs 1 <= i < d");
    Rat c(0);
    for (const auto& x : w.values())
        c += 1 / x;
    Rat outer = 1 / w[0];
    for (std::size_t k = i + 1; k <= d; ++k)
        outer += 1 / w[k];
    Rat inner(0), pairs(0);
    for (std::size_t s = 1; s <= i; ++s) {
        inner += 1 / w[s];
        for (std::size_t t = s + 1; t <= i; ++t)
            pairs += 1 / (w[s] * w[t]);
    }
    WeightedBound out;
    out.value = (outer * inner + pairs) / c;

    IndexSet first = IndexSet::range(i);
    Rat f_first = weighted_exchange_value(w, first);
    Rat best_slice = weighted_covering_radius(weighted_slice(w, first));
    out.argmax = first;
    bool ok = best_slice == out.value;
    for (const auto& idx : subsets_of_size(d, i)) {
        Rat v = weighted_covering_radius(weighted_slice(w, idx));
        if (v > best_slice) {
            best_slice = v;
            out.argmax = idx;
        }
        ok = ok && v <= out.value && weighted_exchange_value(w, idx) <= f_first;
    }
    out.maximizer_check = ok && out.argmax == first;
    return out;
}

struct BoundRow {
    std::size_t d, i;
    std::optional<Rat> cor_projection;  ///< undefined for i = 1
    Rat cor_intersection;
    Rat kl;
    Rat conjectured;
};

/// Closing comparison of the three closed-form bounds for T_d.
inline std::vector<BoundRow> bound_table(std::size_t dlo, std::size_t dhi, std::size_t ilo, std::size_t ihi) {
    std::vector<BoundRow> rows;
    for (std::size_t d = dlo; d <= dhi; ++d)
        for (std::size_t i = std::max<std::size_t>(ilo, 1); i <= std::min(ihi, d); ++i) {
            BoundRow r{d, i, std::nullopt, terminal_intersection_bound(d, i), terminal_kl_bound(d, i),
                       Rat(static_cast<long>(i), 2)};
            if (i >= 2)
                r.cor_projection = terminal_projection_bound(d, i);
            rows.push_back(r);
        }
    return rows;
}

/// Recursive projection strategy over coordinate hyperplanes, in lattice
/// coordinates. U(S, i) bounds mu_i of the projection of K onto the
/// coordinates S: removing k from S leaves the projection onto S \ {k} and
/// the slice along e_k, a segment, so
///   U(S, i) <= max(U(S-k, i), U(S-k, i-1) + 1/len(slice_k)),
/// minimised over k. U(S, 0) = 0, U(S, 1) = 1/width and U(S, |S|) comes from
/// the covering radius callback. K must contain the origin in its interior.
class ProjectionRecursion {
public:
    using WidthFn = std::function<Rat(const Polytope&)>;

    ProjectionRecursion(Polytope k, CoverFn cover, WidthFn width)
        : k_(std::move(k)), cover_(std::move(cover)), width_(std::move(width)) {
        require(k_.origin_interior(), Errc::OriginNotInterior, "projection recursion needs the origin inside");
    }

    BoundReport bound(std::size_t i) {
        require(i >= 1 && i <= k_.dim(), Errc::IndexOutOfRange, "index outside 1..d");
        auto [v, w] = eval(IndexSet::range(k_.dim()), i);
        return {i, v, Method::ProjectionThm, w, false};
    }

private:
    std::pair<Interval, std::string> eval(const IndexSet& s, std::size_t i) {
        auto key = std::make_pair(s, i);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        std::pair<Interval, std::string> out;
        Polytope p = s.size() == k_.dim() ? k_ : coord_project(k_, s);
        if (i == 0) {
            out = {Interval(Rat(0)), "0"};
        } else if (i == 1) {
            out = {Interval(Rat(1) / width_(p)), "width" + s.str()};
        } else if (i == s.size()) {
            out = {cover_(p), "cr" + s.str()};
        } else {
            std::optional<Interval> best;
            for (std::size_t pos = 0; pos < s.size(); ++pos) {
                auto line = coord_slice(p, IndexSet{pos}).body;
                Rat seg = Rat(1) / (line.vertices().back()[0] - line.vertices().front()[0]);
                IndexSet rest = s.without(s[pos]);
                Interval keep = eval(rest, i).first;
                Interval drop = eval(rest, i - 1).first;
                Interval v = max(keep, drop + Interval(seg));
                if (!best || v.hi() < best->hi()) {
                    best = v;
                    out = {v, "drop e" + std::to_string(s[pos] + 1)};
                }
            }
        }
        memo_.emplace(key, out);
        return out;
    }

    Polytope k_;
    CoverFn cover_;
    WidthFn width_;
    std::map<std::pair<IndexSet, std::size_t>, std::pair<Interval, std::string>> memo_;
};

} // namespace covmin
