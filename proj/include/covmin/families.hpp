#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covmin/minima_table.hpp"
#include "covmin/polytope.hpp"

namespace covmin {

/// Weights (w_0, ..., w_d), all strictly positive.
class WeightVector {
public:
    explicit WeightVector(std::vector<Rat> w) : w_(std::move(w)) {
        require(w_.size() >= 2, Errc::InvalidInput, "weight vector needs at least two entries");
        for (const auto& x : w_)
            require(x > 0, Errc::NonPositiveWeight, "weight " + to_string(x) + " is not positive");
        sorted_ = std::is_sorted(w_.begin(), w_.end());
    }
    static WeightVector ones(std::size_t d) { return WeightVector(std::vector<Rat>(d + 1, Rat(1))); }

    std::size_t dim() const { return w_.size() - 1; }
    std::size_t size() const { return w_.size(); }
    const Rat& operator[](std::size_t k) const { return w_[k]; }
    const std::vector<Rat>& values() const { return w_; }
    bool sorted() const { return sorted_; }

    friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.w_ == b.w_; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t k = 0; k < w_.size(); ++k)
            s += (k ? "," : "") + to_string(w_[k]);
        return s + ")";
    }

private:
    std::vector<Rat> w_;
    bool sorted_ = false;
};

/// conv(-w_0 1, w_1 e_1, ..., w_d e_d).
inline Polytope weighted_simplex(const WeightVector& w) {
    const std::size_t d = w.dim();
    std::vector<RatVec> pts;
    pts.emplace_back(d, -w[0]);
    for (std::size_t k = 1; k <= d; ++k)
        pts.push_back(w[k] * RatVec::unit(d, k - 1));
    return Polytope::from_vertices(d, std::move(pts));
}

namespace detail {

// (sum_{j<k in S} 1/(w_j w_k)) / (sum_{j in S} 1/w_j), the covering radius of
// the weighted simplex on the weights indexed by S
inline Rat pair_ratio(const std::vector<Rat>& w) {
    Rat s(0), sq(0);
    for (const auto& x : w) {
        Rat r = Rat(1) / x;
        s += r;
        sq += r * r;
    }
    return (s * s - sq) / (2 * s);
}

} // namespace detail

inline Rat weighted_covering_radius(const WeightVector& w) { return detail::pair_ratio(w.values()); }

/// Value attained by projecting to the first i coordinates. Proven for i = 1
/// and i = d; a conjecture in between.
inline MinimaEntry weighted_conjectured_minimum(const WeightVector& w, std::size_t i) {
    require(w.sorted(), Errc::UnsortedWeights, "weights " + w.str() + " are not sorted ascending");
    require(i >= 1 && i <= w.dim(), Errc::IndexOutOfRange, "index outside 1..d");
    std::vector<Rat> head(w.values().begin(), w.values().begin() + static_cast<long>(i) + 1);
    Rat v = detail::pair_ratio(head);
    if (i == 1 || i == w.dim())
        return MinimaEntry::exact(v, i == 1 ? "weighted width" : "weighted covering radius");
    return MinimaEntry::conjecture(v, "CONJECTURED weighted projection");
}

/// Weights of S(w) ∩ L_I, expressed in the coordinates of I.
inline WeightVector weighted_slice(const WeightVector& w, const IndexSet& idx) {
    const std::size_t d = w.dim();
    require(!idx.empty() && idx.within(d), Errc::IndexOutOfRange, "slice index set " + idx.str());
    Rat inv(1 / w[0]);
    for (std::size_t k = 0; k < d; ++k)
        if (!idx.contains(k))
            inv += 1 / w[k + 1];
    std::vector<Rat> out{Rat(1) / inv};
    for (auto k : idx)
        out.push_back(w[k + 1]);
    return WeightVector(std::move(out));
}

inline Polytope terminal_simplex(std::size_t d) { return weighted_simplex(WeightVector::ones(d)); }

inline Polytope cube(std::size_t d, const Rat& r = Rat(1)) {
    std::vector<RatVec> pts;
    for (unsigned long mask = 0; mask < (1UL << d); ++mask) {
        RatVec v(d);
        for (std::size_t k = 0; k < d; ++k)
            v[k] = (mask >> k) & 1 ? r : Rat(-r);
        pts.push_back(std::move(v));
    }
    return Polytope::from_vertices(d, std::move(pts));
}

/// Axis-parallel box [lo_1, hi_1] x ... x [lo_d, hi_d].
inline Polytope box(const RatVec& lo, const RatVec& hi) {
    const std::size_t d = lo.size();
    std::vector<RatVec> pts;
    for (unsigned long mask = 0; mask < (1UL << d); ++mask) {
        RatVec v(d);
        for (std::size_t k = 0; k < d; ++k)
            v[k] = (mask >> k) & 1 ? hi[k] : lo[k];
        pts.push_back(std::move(v));
    }
    return Polytope(d, std::move(pts));
}

inline Polytope crosspolytope(std::size_t d) {
    std::vector<RatVec> pts;
    for (std::size_t k = 0; k < d; ++k) {
        pts.push_back(RatVec::unit(d, k));
        pts.push_back(-RatVec::unit(d, k));
    }
    return Polytope::from_vertices(d, std::move(pts));
}

inline Polytope segment(const Rat& a, const Rat& b) {
    require(a < b, Errc::ZeroLength, "segment [" + to_string(a) + ", " + to_string(b) + "] has no length");
    return Polytope::from_vertices(1, {RatVec{a}, RatVec{b}});
}

/// conv(0, e_1, ..., e_d).
inline Polytope unimodular_simplex(std::size_t d) {
    std::vector<RatVec> pts{RatVec(d)};
    for (std::size_t k = 0; k < d; ++k)
        pts.push_back(RatVec::unit(d, k));
    return Polytope::from_vertices(d, std::move(pts));
}

/// Direct sum of terminal simplices of the given dimensions.
inline Polytope terminal_polytope(const std::vector<std::size_t>& dims) {
    require(!dims.empty(), Errc::InvalidInput, "terminal polytope needs at least one summand");
    Polytope p = terminal_simplex(dims[0]);
    for (std::size_t k = 1; k < dims.size(); ++k)
        p = direct_sum(p, terminal_simplex(dims[k]));
    return p;
}

/// Entry i of the table of a direct sum, from the summand tables: the maximum
/// of mu_j(K) + mu_{i-j}(L) over admissible j. Interval entries propagate by
/// the componentwise maximum. Returns the entry and the maximising j.
inline std::pair<MinimaEntry, std::size_t> direct_sum_entry(const MinimaTable& a, const MinimaTable& b,
                                                           std::size_t i) {
    const std::size_t da = a.dim(), db = b.dim();
    require(i <= da + db, Errc::IndexOutOfRange,
            "index " + std::to_string(i) + " exceeds dimension " + std::to_string(da + db));
    std::optional<Interval> best;
    std::size_t arg = 0;
    bool conj = false;
    for (std::size_t j = (i > db ? i - db : 0); j <= std::min(i, da); ++j) {
        const auto& ea = a.at(j);
        const auto& eb = b.at(i - j);
        conj = conj || ea.conjectured || eb.conjectured;
        Interval v = ea.interval() + eb.interval();
        if (!best) {
            best = v;
            arg = j;
        } else {
            if (best->hi() < v.hi() || (best->hi() == v.hi() && best->lo() < v.lo()))
                arg = j;
            best = max(*best, v);
        }
    }
    std::string prov = conj ? "CONJECTURED direct sum" : "direct sum";
    MinimaEntry e = conj && best->is_point() ? MinimaEntry::conjecture(best->lo(), prov)
                                              : MinimaEntry::certified(*best, prov);
    e.conjectured = conj;
    return {e, arg};
}

inline MinimaEntry direct_sum_minima(const MinimaTable& a, const MinimaTable& b, std::size_t i) {
    return direct_sum_entry(a, b, i).first;
}

inline MinimaTable direct_sum_table(const MinimaTable& a, const MinimaTable& b) {
    MinimaTable t(a.dim() + b.dim());
    for (std::size_t i = 1; i <= t.dim(); ++i)
        t.set(i, direct_sum_minima(a, b, i));
    return t;
}

/// mu_i of a direct sum of segments [a_j, b_j], each containing 0: the sum of
/// the i largest reciprocal lengths.
inline Rat segment_sum_minima(const std::vector<std::pair<Rat, Rat>>& segments, std::size_t i) {
    require(i <= segments.size(), Errc::IndexOutOfRange, "index exceeds number of segments");
    std::vector<Rat> rec;
    for (const auto& [a, b] : segments) {
        require(a < b, Errc::ZeroLength, "segment [" + to_string(a) + ", " + to_string(b) + "] has no length");
        require(a <= 0 && 0 <= b, Errc::OriginMissing, "segment does not contain 0");
        rec.push_back(Rat(1) / (b - a));
    }
    std::sort(rec.begin(), rec.end(), std::greater<>());
    Rat s(0);
    for (std::size_t k = 0; k < i; ++k)
        s += rec[k];
    return s;
}

/// Exact table of a single segment.
inline MinimaTable segment_table(const Rat& a, const Rat& b) {
    MinimaTable t(1);
    t.set(1, MinimaEntry::exact(Rat(1) / (b - a), "segment reciprocal length"));
    return t;
}

/// Table of T_d: mu_1 = 1/2 and mu_d = d/2 proven, the rest conjectured i/2.
inline MinimaTable terminal_table(std::size_t d) {
    MinimaTable t(d);
    for (std::size_t i = 1; i <= d; ++i) {
        Rat v(i, 2);
        if (i == 1 || i == d)
            t.set(i, MinimaEntry::exact(v, i == 1 ? "terminal width" : "terminal covering radius"));
        else
            t.set(i, MinimaEntry::conjecture(v, "CONJECTURED terminal i/2"));
    }
    return t;
}

/// Table of the weighted simplex: proven ends, conjectured middle.
inline MinimaTable weighted_table(const WeightVector& w) {
    MinimaTable t(w.dim());
    for (std::size_t i = 1; i <= w.dim(); ++i)
        t.set(i, weighted_conjectured_minimum(w, i));
    return t;
}

/// Table of a direct sum of terminal simplices built from the summand tables.
inline MinimaTable terminal_polytope_table(const std::vector<std::size_t>& dims) {
    require(!dims.empty(), Errc::InvalidInput, "terminal polytope needs at least one summand");
    MinimaTable t = terminal_table(dims[0]);
    for (std::size_t k = 1; k < dims.size(); ++k)
        t = direct_sum_table(t, terminal_table(dims[k]));
    return t;
}

/// If P is a weighted simplex S(w) exactly, its weights.
inline std::optional<WeightVector> as_weighted_simplex(const Polytope& p) {
    const std::size_t d = p.dim();
    if (d == 0 || p.vertices().size() != d + 1)
        return std::nullopt;
    std::vector<Rat> w(d + 1, Rat(0));
    for (const auto& v : p.vertices()) {
        std::size_t nz = 0, at = 0;
        for (std::size_t k = 0; k < d; ++k)
            if (v[k] != 0) {
                ++nz;
                at = k;
            }
        if (nz == 1 && d > 1 && v[at] > 0) {
            if (w[at + 1] != 0)
                return std::nullopt;
            w[at + 1] = v[at];
        } else if (nz == d && v[0] < 0 && std::all_of(v.begin(), v.end(), [&](const Rat& x) { return x == v[0]; })) {
            if (w[0] != 0)
                return std::nullopt;
            w[0] = -v[0];
        } else if (d == 1 && nz == 1 && v[0] > 0) {
            w[1] = v[0];
        } else {
            return std::nullopt;
        }
    }
    if (std::any_of(w.begin(), w.end(), [](const Rat& x) { return x == 0; }))
        return std::nullopt;
    return WeightVector(std::move(w));
}

/// Covering radius with respect to Z^d when P is a segment, an axis-parallel
/// box or a weighted simplex; nullopt otherwise.
inline std::optional<Rat> closed_form_covering_radius(const Polytope& p) {
    const std::size_t d = p.dim();
    if (d == 0 || !p.is_full_dimensional())
        return std::nullopt;
    if (d == 1)
        return Rat(1) / (p.vertices().back()[0] - p.vertices().front()[0]);
    Box bb = p.bounding_box();
    if (p.vertices().size() == (std::size_t(1) << d) && box(bb.lo, bb.hi) == p) {
        Rat best(0);
        for (std::size_t k = 0; k < d; ++k)
            best = std::max(best, Rat(1) / (bb.hi[k] - bb.lo[k]));
        return best;
    }
    if (auto w = as_weighted_simplex(p))
        return weighted_covering_radius(*w);
    return std::nullopt;
}

} // namespace covmin
