#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "covmin/lattice.hpp"
#include "covmin/linalg.hpp"
#include "covmin/lp.hpp"

namespace covmin {

/// Sorted set of coordinate indices (0-based internally; printed 1-based).
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(std::initializer_list<std::size_t> xs) : idx_(xs) { normalize(); }
    explicit IndexSet(std::vector<std::size_t> xs) : idx_(std::move(xs)) { normalize(); }

    static IndexSet range(std::size_t n) {
        std::vector<std::size_t> v(n);
        for (std::size_t k = 0; k < n; ++k)
            v[k] = k;
        return IndexSet(std::move(v));
    }
    static IndexSet from_mask(unsigned long mask, std::size_t n) {
        std::vector<std::size_t> v;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1UL)
                v.push_back(k);
        return IndexSet(std::move(v));
    }

    std::size_t size() const { return idx_.size(); }
    bool empty() const { return idx_.empty(); }
    std::size_t operator[](std::size_t k) const { return idx_[k]; }
    auto begin() const { return idx_.begin(); }
    auto end() const { return idx_.end(); }
    bool contains(std::size_t k) const { return std::binary_search(idx_.begin(), idx_.end(), k); }
    bool within(std::size_t d) const { return idx_.empty() || idx_.back() < d; }

    IndexSet complement(std::size_t d) const {
        std::vector<std::size_t> v;
        for (std::size_t k = 0; k < d; ++k)
            if (!contains(k))
                v.push_back(k);
        return IndexSet(std::move(v));
    }
    IndexSet without(std::size_t k) const {
        std::vector<std::size_t> v;
        for (auto x : idx_)
            if (x != k)
                v.push_back(x);
        return IndexSet(std::move(v));
    }

    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.idx_ == b.idx_; }
    friend bool operator<(const IndexSet& a, const IndexSet& b) { return a.idx_ < b.idx_; }

    /// 1-based display, e.g. "{1,2}".
    std::string str() const {
        std::string s = "{";
        for (std::size_t k = 0; k < idx_.size(); ++k)
            s += (k ? "," : "") + std::to_string(idx_[k] + 1);
        return s + "}";
    }

private:
    void normalize() {
        std::sort(idx_.begin(), idx_.end());
        require(std::adjacent_find(idx_.begin(), idx_.end()) == idx_.end(), Errc::InvalidInput,
                "index set has repeated elements");
    }

    std::vector<std::size_t> idx_;
};

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<IndexSet> subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<IndexSet> out;
    if (k > n)
        return out;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i)
        c[i] = i;
    while (true) {
        out.emplace_back(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return out;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j)
            c[j] = c[j - 1] + 1;
    }
}

/// Facet inequality normal . x <= offset; normal is a primitive integer vector.
struct Facet {
    RatVec normal;
    Rat offset;

    friend bool operator==(const Facet& a, const Facet& b) {
        return a.normal == b.normal && a.offset == b.offset;
    }
    friend bool operator<(const Facet& a, const Facet& b) {
        if (!(a.normal == b.normal))
            return a.normal < b.normal;
        return a.offset < b.offset;
    }
};

namespace detail {

inline std::vector<RatVec> dedupe(std::vector<RatVec> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// p is extreme in conv(pts) iff some functional c (|c_i| <= 1) has
// c.(q - p) <= -t for every other q with t > 0.
inline bool is_extreme(const std::vector<RatVec>& pts, std::size_t p) {
    const std::size_t d = pts[p].size();
    const std::size_t others = pts.size() - 1;
    if (others == 0)
        return true;
    const std::size_t nv = 2 * d + 1;
    RatMat a(others + 2 * d + 1, nv);
    std::vector<Rat> b(a.rows(), Rat(0)), c(nv, Rat(0));
    c[2 * d] = 1;
    std::size_t r = 0;
    for (std::size_t q = 0; q < pts.size(); ++q) {
        if (q == p)
            continue;
        for (std::size_t j = 0; j < d; ++j) {
            Rat diff = pts[q][j] - pts[p][j];
            a(r, j) = diff;
            a(r, d + j) = -diff;
        }
        a(r, 2 * d) = 1;
        ++r;
    }
    for (std::size_t j = 0; j < 2 * d; ++j) {
        a(r, j) = 1;
        b[r] = 1;
        ++r;
    }
    a(r, 2 * d) = 1;
    b[r] = 1;
    auto res = lp_maximize(a, b, c);
    return res.status == LpStatus::Optimal && res.value > 0;
}

/// Sorted, duplicate-free list of the extreme points.
inline std::vector<RatVec> canonical_vertices(std::vector<RatVec> pts) {
    pts = dedupe(std::move(pts));
    if (pts.size() <= 1)
        return pts;
    if (affine_dimension(pts) + 1 == pts.size())
        return pts;
    std::vector<RatVec> out;
    for (std::size_t p = 0; p < pts.size(); ++p)
        if (is_extreme(pts, p))
            out.push_back(pts[p]);
    return out;
}

} // namespace detail

/// Convex polytope in vertex representation, with a lazily computed and cached
/// facet representation. Vertices are always irredundant and sorted, so two
/// polytopes are equal as sets iff their vertex lists are equal.
class Polytope {
public:
    Polytope() : Polytope(0, {RatVec()}, true) {}

    Polytope(std::size_t dim, std::vector<RatVec> points) : Polytope(dim, std::move(points), false) {}

    /// Skips the redundancy test; the caller guarantees every point is extreme.
    static Polytope from_vertices(std::size_t dim, std::vector<RatVec> vertices) {
        return Polytope(dim, detail::dedupe(std::move(vertices)), true);
    }

    std::size_t dim() const { return dim_; }
    const std::vector<RatVec>& vertices() const { return vertices_; }
    std::size_t affine_dim() const { return affine_dimension(vertices_); }
    bool is_full_dimensional() const { return affine_dim() == dim_; }

    /// Facets (requires full dimension), sorted. Computed once and shared
    /// between copies.
    const std::vector<Facet>& facets() const {
        std::call_once(cache_->once, [this] { cache_->facets = compute_facets(); });
        return cache_->facets;
    }

    bool contains(const RatVec& x) const {
        for (const auto& f : facets())
            if (dot(f.normal, x) > f.offset)
                return false;
        return true;
    }
    bool contains_origin() const {
        if (dim_ == 0)
            return true;
        if (!is_full_dimensional()) {
            std::vector<RatVec> pts = vertices_;
            pts.push_back(RatVec(dim_));
            return detail::canonical_vertices(std::move(pts)) == vertices_;
        }
        for (const auto& f : facets())
            if (f.offset < 0)
                return false;
        return true;
    }
    bool origin_interior() const {
        if (dim_ == 0)
            return true;
        if (!is_full_dimensional())
            return false;
        for (const auto& f : facets())
            if (f.offset <= 0)
                return false;
        return true;
    }

    Box bounding_box() const {
        Box b{vertices_.front(), vertices_.front()};
        for (const auto& v : vertices_)
            for (std::size_t i = 0; i < dim_; ++i) {
                if (v[i] < b.lo[i])
                    b.lo[i] = v[i];
                if (v[i] > b.hi[i])
                    b.hi[i] = v[i];
            }
        return b;
    }

    RatVec centroid() const {
        RatVec c(dim_);
        for (const auto& v : vertices_)
            c += v;
        c *= Rat(1, vertices_.size());
        return c;
    }

    Polytope translate(const RatVec& shift) const {
        std::vector<RatVec> pts;
        for (const auto& v : vertices_)
            pts.push_back(v + shift);
        return from_vertices(dim_, std::move(pts));
    }

    /// Image under an invertible linear map.
    Polytope linear_image(const RatMat& a) const {
        require(a.rows() == dim_ && a.cols() == dim_, Errc::DimensionMismatch, "linear map shape");
        std::vector<RatVec> pts;
        for (const auto& v : vertices_)
            pts.push_back(a * v);
        if (det(a) != 0)
            return from_vertices(dim_, std::move(pts));
        return Polytope(dim_, std::move(pts));
    }

    Polytope negate() const {
        std::vector<RatVec> pts;
        for (const auto& v : vertices_)
            pts.push_back(-v);
        return from_vertices(dim_, std::move(pts));
    }

    friend bool operator==(const Polytope& a, const Polytope& b) {
        return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
    }

    std::string str() const {
        std::string s = "conv{";
        for (std::size_t k = 0; k < vertices_.size(); ++k)
            s += (k ? ", " : "") + to_string(vertices_[k]);
        return s + "}";
    }

private:
    struct Cache {
        std::once_flag once;
        std::vector<Facet> facets;
    };

    Polytope(std::size_t dim, std::vector<RatVec> points, bool trusted)
        : dim_(dim), cache_(std::make_shared<Cache>()) {
        require(!points.empty(), Errc::InvalidInput, "polytope needs at least one point");
        for (const auto& p : points)
            require(p.size() == dim, Errc::DimensionMismatch,
                    "point of dimension " + std::to_string(p.size()) + " in R^" + std::to_string(dim));
        vertices_ = trusted ? std::move(points) : detail::canonical_vertices(std::move(points));
    }

    std::vector<Facet> compute_facets() const {
        if (!is_full_dimensional())
            fail(Errc::NotFullDimensional, "affine hull has dimension " + std::to_string(affine_dim()) +
                                               " in R^" + std::to_string(dim_));
        std::set<Facet> found;
        const std::size_t n = vertices_.size();
        for (const auto& subset : subsets_of_size(n, dim_)) {
            const RatVec& base = vertices_[subset[0]];
            RatMat diffs(dim_ - 1, dim_);
            for (std::size_t k = 1; k < dim_; ++k)
                diffs.set_row(k - 1, vertices_[subset[k]] - base);
            auto ns = nullspace(diffs);
            if (ns.size() != 1)
                continue;
            RatVec normal = to_rat(primitive_integer(ns[0]));
            Rat offset = dot(normal, base);
            bool below = true, above = true;
            for (const auto& v : vertices_) {
                Rat s = dot(normal, v);
                below = below && s <= offset;
                above = above && s >= offset;
                if (!below && !above)
                    break;
            }
            if (below)
                found.insert({normal, offset});
            else if (above)
                found.insert({-normal, -offset});
        }
        return {found.begin(), found.end()};
    }

    std::size_t dim_;
    std::vector<RatVec> vertices_;
    std::shared_ptr<Cache> cache_;
};

inline std::vector<Facet> vrep_to_hrep(const Polytope& p) { return p.facets(); }

/// Minkowski functional min{t >= 0 : x in tP}; needs the origin strictly inside P.
inline Rat gauge(const Polytope& p, const RatVec& x) {
    Rat best(0);
    for (const auto& f : p.facets()) {
        if (f.offset <= 0)
            fail(Errc::OriginNotInterior, "facet with offset " + to_string(f.offset));
        Rat v = dot(f.normal, x) / f.offset;
        if (v > best)
            best = v;
    }
    return best;
}

/// Support function h_P(f) = max over vertices of f.v.
inline Rat support(const Polytope& p, const RatVec& f) {
    Rat best = dot(f, p.vertices().front());
    for (const auto& v : p.vertices()) {
        Rat s = dot(f, v);
        if (s > best)
            best = s;
    }
    return best;
}

/// Translates P by minus its vertex centroid; returns the translate and the shift applied.
inline std::pair<Polytope, RatVec> center_translate(const Polytope& p) {
    require(p.is_full_dimensional(), Errc::NotFullDimensional, "center_translate");
    RatVec shift = -p.centroid();
    return {p.translate(shift), shift};
}

inline Polytope coord_project(const Polytope& p, const IndexSet& idx) {
    require(idx.within(p.dim()), Errc::IndexOutOfRange, "index set " + idx.str());
    std::vector<RatVec> pts;
    for (const auto& v : p.vertices()) {
        RatVec w(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k)
            w[k] = v[idx[k]];
        pts.push_back(std::move(w));
    }
    return Polytope(idx.size(), std::move(pts));
}

struct SliceResult {
    Polytope body;          ///< expressed in the coordinates of the index set
    bool full_dimensional;  ///< false flags dim(P ∩ L_I) < |I|
};

/// P ∩ L_I, where L_I is the coordinate subspace {x : x_k = 0 for k not in I}.
inline SliceResult coord_slice(const Polytope& p, const IndexSet& idx) {
    require(idx.within(p.dim()), Errc::IndexOutOfRange, "index set " + idx.str());
    const std::size_t k = idx.size();
    std::set<Facet> rows;
    for (const auto& f : p.facets()) {
        RatVec a(k);
        for (std::size_t j = 0; j < k; ++j)
            a[j] = f.normal[idx[j]];
        if (a.is_zero()) {
            if (f.offset < 0)
                fail(Errc::EmptySlice, "slice " + idx.str() + " is empty");
            continue;
        }
        // rescale the row so that the restricted normal is primitive
        IntVec prim = primitive_integer(a);
        std::size_t lead = 0;
        while (a[lead] == 0)
            ++lead;
        Rat factor = Rat(prim[lead]) / a[lead];
        rows.insert({to_rat(prim), f.offset * factor});
    }
    std::vector<Facet> hs(rows.begin(), rows.end());
    std::vector<RatVec> verts;
    if (k == 0)
        return {Polytope(), true};
    for (const auto& sub : subsets_of_size(hs.size(), k)) {
        RatMat a(k, k);
        RatVec b(k);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t j = 0; j < k; ++j)
                a(r, j) = hs[sub[r]].normal[j];
            b[r] = hs[sub[r]].offset;
        }
        auto x = solve(a, b);
        if (!x)
            continue;
        bool ok = std::all_of(hs.begin(), hs.end(),
                              [&](const Facet& h) { return dot(h.normal, *x) <= h.offset; });
        if (ok)
            verts.push_back(std::move(*x));
    }
    if (verts.empty())
        fail(Errc::EmptySlice, "slice " + idx.str() + " is empty");
    Polytope body(k, std::move(verts));
    bool full = body.is_full_dimensional();
    return {std::move(body), full};
}

/// K ⊕ L: convex hull of K x {0} and {0} x L. Both summands must contain the origin.
inline Polytope direct_sum(const Polytope& k, const Polytope& l) {
    require(k.contains_origin(), Errc::OriginMissing, "first summand does not contain the origin");
    require(l.contains_origin(), Errc::OriginMissing, "second summand does not contain the origin");
    const std::size_t n = k.dim() + l.dim();
    std::vector<RatVec> pts;
    for (const auto& v : k.vertices()) {
        RatVec w(n);
        for (std::size_t i = 0; i < k.dim(); ++i)
            w[i] = v[i];
        pts.push_back(std::move(w));
    }
    for (const auto& v : l.vertices()) {
        RatVec w(n);
        for (std::size_t i = 0; i < l.dim(); ++i)
            w[k.dim() + i] = v[i];
        pts.push_back(std::move(w));
    }
    return Polytope(n, std::move(pts));
}

/// K - K = conv{v - w}.
inline Polytope difference_body(const Polytope& p) {
    std::vector<RatVec> pts;
    for (const auto& v : p.vertices())
        for (const auto& w : p.vertices())
            if (!(v == w))
                pts.push_back(v - w);
    if (pts.empty())
        pts.push_back(RatVec(p.dim()));
    return Polytope(p.dim(), std::move(pts));
}

/// True iff P ∩ L_I = π_I(P) for every nonempty proper coordinate subset I.
inline bool is_locally_anti_blocking(const Polytope& p) {
    require(p.origin_interior(), Errc::OriginNotInterior, "locally anti-blocking test needs a proper body");
    const std::size_t d = p.dim();
    require(d < 8 * sizeof(unsigned long) - 1, Errc::IndexOutOfRange, "dimension too large");
    for (unsigned long mask = 1; mask + 1 < (1UL << d); ++mask) {
        IndexSet idx = IndexSet::from_mask(mask, d);
        if (!(coord_slice(p, idx).body == coord_project(p, idx)))
            return false;
    }
    return true;
}

/// Coordinate blocks along which P splits as a direct sum: the connected
/// components of the coordinate supports of the vertices. A single block
/// means no split. Blocks whose part of P misses the origin are merged, so
/// every reported split satisfies the direct sum convention.
inline std::vector<IndexSet> direct_sum_blocks(const Polytope& p) {
    const std::size_t d = p.dim();
    std::vector<std::size_t> parent(d);
    for (std::size_t k = 0; k < d; ++k)
        parent[k] = k;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& v : p.vertices()) {
        std::optional<std::size_t> first;
        for (std::size_t k = 0; k < d; ++k) {
            if (v[k] == 0)
                continue;
            if (first)
                parent[find(k)] = find(*first);
            else
                first = k;
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < d; ++k)
        groups[find(k)].push_back(k);
    std::vector<IndexSet> blocks;
    for (auto& [root, members] : groups)
        blocks.emplace_back(members);
    std::sort(blocks.begin(), blocks.end());
    if (blocks.size() > 1)
        for (const auto& b : blocks)
            if (!coord_project(p, b).contains_origin())
                return {IndexSet::range(d)};
    return blocks;
}

} // namespace covmin
