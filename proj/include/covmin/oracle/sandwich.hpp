#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "covmin/bounds.hpp"
#include "covmin/families.hpp"
#include "covmin/oracle/covering_radius.hpp"
#include "covmin/oracle/lattice_width.hpp"
#include "covmin/oracle/parallel.hpp"
#include "covmin/oracle/successive_minima.hpp"

namespace covmin {

struct SandwichOptions {
    Rat tol = Rat(1, 10000);
    unsigned jobs = 1;
    /// Extra lower-bound projections x -> P x, each an integer matrix of full row rank.
    std::vector<IntMat> projections;
    bool shortcuts = true;        ///< closed forms, LAB and width short-circuits
    bool direct_sum_split = true; ///< recurse into detected direct summands
    Budget budget = Budget::from_env();
};

struct SandwichResult {
    std::size_t i = 0;
    Rat lower;
    Rat upper;
    std::string lb_witness;
    std::string ub_witness;
    bool exact = false;

    Interval interval() const { return lower <= upper ? Interval(lower, upper) : Interval(upper, lower); }
    bool contains(const Rat& x, const Rat& slack = Rat(0)) const {
        return lower - slack <= x && x <= upper + slack;
    }
};

/// Memoised covering radii with respect to Z^dim. Closed forms are used when
/// the body is recognised, the branch and bound oracle otherwise. Safe to
/// share between threads.
class CoverCache {
public:
    CoverCache(Rat tol, Budget budget) : tol_(std::move(tol)), budget_(budget) {}

    Interval operator()(const Polytope& p) {
        std::string key = p.str();
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (auto it = memo_.find(key); it != memo_.end())
                return it->second;
        }
        Interval v;
        if (auto c = closed_form_covering_radius(p)) {
            v = Interval(*c);
        } else {
            CoveringOptions opt;
            opt.tol = tol_;
            opt.budget = budget_;
            v = covering_radius(p, Lattice::standard(p.dim()), opt).interval;
        }
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(key, v);
        return v;
    }

    /// Fills the cache for several bodies at once.
    void prefetch(const std::vector<Polytope>& bodies, unsigned jobs) {
        parallel_map(bodies.size(), jobs, [&](std::size_t k) { return (*this)(bodies[k]); });
    }

    CoverFn fn() {
        return [this](const Polytope& p) { return (*this)(p); };
    }

private:
    Rat tol_;
    Budget budget_;
    std::mutex mu_;
    std::map<std::string, Interval> memo_;
};

namespace detail {

inline Rat width_t(const Polytope& p) { return lattice_width(p, Lattice::standard(p.dim())).width; }

inline Polytope centered(const Polytope& p) { return p.translate(-p.centroid()); }

inline SandwichResult sandwich_t(const Polytope& kt, std::size_t i, const SandwichOptions& opt, CoverCache& cache);

inline MinimaTable sandwich_table_t(const Polytope& kt, const SandwichOptions& opt, CoverCache& cache) {
    MinimaTable t(kt.dim());
    for (std::size_t j = 1; j <= kt.dim(); ++j) {
        auto r = sandwich_t(kt, j, opt, cache);
        t.set(j, MinimaEntry::certified(r.interval(), r.ub_witness));
    }
    return t;
}

// The LAB formula in lattice coordinates; nullopt when K is not a proper LAB body.
inline std::optional<std::pair<Interval, std::string>> lab_value_t(const Polytope& kt, std::size_t i,
                                                                   const SandwichOptions& opt, CoverCache& cache) {
    if (!kt.origin_interior() || !is_locally_anti_blocking(kt))
        return std::nullopt;
    std::vector<Polytope> slices;
    auto subsets = subsets_of_size(kt.dim(), i);
    for (const auto& idx : subsets)
        slices.push_back(idx.size() == kt.dim() ? kt : coord_slice(kt, idx).body);
    cache.prefetch(slices, opt.jobs);
    std::optional<Interval> best;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < slices.size(); ++k) {
        Interval v = cache(slices[k]);
        if (best && best->hi() < v.hi())
            arg = k;
        best = best ? max(*best, v) : v;
    }
    return std::make_pair(*best, "LAB slice I=" + subsets[arg].str());
}

inline SandwichResult sandwich_t(const Polytope& kt, std::size_t i, const SandwichOptions& opt, CoverCache& cache) {
    const std::size_t d = kt.dim();
    require(kt.is_full_dimensional(), Errc::NotFullDimensional, "sandwich needs a full-dimensional body");
    require(i >= 1 && i <= d, Errc::IndexOutOfRange, "index " + std::to_string(i) + " outside 1.." + std::to_string(d));
    SandwichResult res;
    res.i = i;
    auto exact = [&](const Interval& v, const std::string& why) {
        res.lower = v.lo();
        res.upper = v.hi();
        res.lb_witness = why;
        res.ub_witness = why;
        res.exact = v.is_point();
        return res;
    };

    if (opt.shortcuts && i == 1)
        return exact(Interval(Rat(1) / width_t(kt)), "1/width");

    if (opt.direct_sum_split) {
        auto blocks = direct_sum_blocks(kt);
        if (blocks.size() > 1) {
            MinimaTable acc = sandwich_table_t(coord_project(kt, blocks[0]), opt, cache);
            std::string name = blocks[0].str();
            for (std::size_t b = 1; b < blocks.size(); ++b) {
                acc = direct_sum_table(acc, sandwich_table_t(coord_project(kt, blocks[b]), opt, cache));
                name += "+" + blocks[b].str();
            }
            return exact(acc.at(i).interval(), "direct sum " + name);
        }
    }

    if (opt.shortcuts) {
        if (i == d)
            if (auto c = closed_form_covering_radius(kt))
                return exact(Interval(*c), "closed form");
        if (kt.origin_interior())
            if (auto lab = lab_value_t(kt, i, opt, cache))
                return exact(lab->first, lab->second);
        Polytope kc = centered(kt);
        if (auto lab = lab_value_t(kc, i, opt, cache))
            return exact(lab->first, lab->second + " (centered)");
    }

    Polytope kc = centered(kt);
    auto proj_sets = subsets_of_size(d, i);
    std::vector<Polytope> warm;
    for (const auto& idx : proj_sets)
        warm.push_back(idx.size() == d ? kc : coord_project(kc, idx));
    for (const auto& idx : proj_sets)
        if (idx.size() < d) {
            auto s = coord_slice(kc, idx);
            if (s.full_dimensional)
                warm.push_back(s.body);
        }
    warm.push_back(kc);
    cache.prefetch(warm, opt.jobs);

    // lower side: projections, and mu_i >= mu_1
    Rat w = width_t(kt);
    res.lower = Rat(1) / w;
    res.lb_witness = "1/width";
    for (std::size_t k = 0; k < proj_sets.size(); ++k) {
        Rat v = cache(warm[k]).lo();
        if (v > res.lower) {
            res.lower = v;
            res.lb_witness = "projection I=" + proj_sets[k].str();
        }
    }

    // upper side
    std::vector<BoundReport> reports;
    try {
        reports.push_back(intersection_bound(kc, i, cache.fn()));
    } catch (const Error& e) {
        if (e.code() != Errc::SliceDegenerate)
            throw;
    }
    ProjectionRecursion rec(kc, cache.fn(), width_t);
    reports.push_back(rec.bound(i));
    if (i > 1) {
        auto lam = successive_minima(difference_body(kc), Lattice::standard(d), opt.budget).lambda;
        reports.push_back(kl_bound(MinimaEntry::exact(Rat(1) / w, "1/width"), 1, lam, i));
    }
    reports.push_back({i, cache(kc), Method::Monotone, "mu_d", false});
    res.upper = reports.front().upper();
    res.ub_witness = method_name(reports.front().method) + " " + reports.front().witness;
    for (const auto& r : reports)
        if (r.upper() < res.upper) {
            res.upper = r.upper();
            res.ub_witness = method_name(r.method) + " " + r.witness;
        }
    if (res.lower > res.upper + 2 * opt.tol)
        fail(Errc::Inconsistent, "sandwich lower " + to_string(res.lower) + " exceeds upper " + to_string(res.upper));
    res.exact = res.lower == res.upper;
    return res;
}

inline Polytope to_lattice_coordinates(const Polytope& k, const Lattice& lat) {
    require(k.dim() == lat.dim(), Errc::DimensionMismatch, "body and lattice dimensions differ");
    return lat.is_standard() ? k : k.linear_image(lat.inverse());
}

} // namespace detail

/// Certified enclosure [lower, upper] of mu_i(K, Lambda).
inline SandwichResult minima_sandwich(const Polytope& k, const Lattice& lat, std::size_t i,
                                      const SandwichOptions& opt = {}) {
    CoverCache cache(opt.tol, opt.budget);
    SandwichResult res = detail::sandwich_t(detail::to_lattice_coordinates(k, lat), i, opt, cache);
    for (std::size_t p = 0; p < opt.projections.size(); ++p) {
        const IntMat& m = opt.projections[p];
        require(m.cols() == k.dim(), Errc::DimensionMismatch, "projection matrix width");
        if (m.rows() != i)
            continue;
        RatMat mr(m.rows(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                mr(r, c) = Rat(m(r, c));
        require(rank(mr) == i, Errc::InvalidInput, "projection matrix must have full row rank");
        std::vector<RatVec> pts, gens;
        for (const auto& v : k.vertices())
            pts.push_back(mr * v);
        for (std::size_t b = 0; b < lat.dim(); ++b)
            gens.push_back(mr * lat.vector(b));
        Polytope pk(i, std::move(pts));
        Lattice pl = Lattice::from_vectors(group_basis(gens, i, opt.budget));
        Rat v = cache(detail::to_lattice_coordinates(pk, pl)).lo();
        if (v > res.lower) {
            res.lower = v;
            res.lb_witness = "user projection " + std::to_string(p + 1);
        }
    }
    if (res.lower > res.upper + 2 * opt.tol)
        fail(Errc::Inconsistent, "sandwich lower " + to_string(res.lower) + " exceeds upper " + to_string(res.upper));
    res.exact = res.lower == res.upper;
    return res;
}

/// Sandwich enclosures for every index 1..d.
inline MinimaTable minima_table(const Polytope& k, const Lattice& lat, const SandwichOptions& opt = {}) {
    CoverCache cache(opt.tol, opt.budget);
    return detail::sandwich_table_t(detail::to_lattice_coordinates(k, lat), opt, cache);
}

/// mu_i of a proper locally anti-blocking body with respect to Z^d: the
/// largest covering radius among its i-dimensional coordinate slices.
inline MinimaEntry lab_minima(const Polytope& k, std::size_t i, const Rat& tol = Rat(1, 10000), unsigned jobs = 1) {
    require(i >= 1 && i <= k.dim(), Errc::IndexOutOfRange, "index outside 1..d");
    if (!k.origin_interior())
        fail(Errc::NotLAB, "body does not contain the origin in its interior");
    SandwichOptions opt;
    opt.tol = tol;
    opt.jobs = jobs;
    CoverCache cache(tol, opt.budget);
    auto v = detail::lab_value_t(k, i, opt, cache);
    if (!v)
        fail(Errc::NotLAB, "body is not locally anti-blocking");
    return MinimaEntry::certified(v->first, v->second);
}

struct DirectSumReport {
    std::size_t i = 0;
    Interval rhs;                   ///< max_j mu_j(K) + mu_{i-j}(L) from the summand tables
    std::size_t j = 0;
    Interval projection_value;      ///< projection bound with V the first block
    bool projection_matches = false;
    SandwichResult sandwich;        ///< of K ⊕ L without splitting
    bool sandwich_contains = false;
    std::optional<Interval> sum_radius;    ///< oracle mu(K ⊕ L), only for i = dim
    std::optional<Interval> radius_sum;    ///< oracle mu(K) + mu(L)
    std::optional<bool> additive;
    bool ok() const { return projection_matches && sandwich_contains && additive.value_or(true); }
};

/// Checks the direct sum equality for mu_i(K ⊕ L) three ways. Both bodies
/// live in lattice coordinates (lattices Z^dim).
inline DirectSumReport verify_direct_sum(const Polytope& k, const Polytope& l, std::size_t i,
                                         const Rat& tol = Rat(1, 10000), unsigned jobs = 1) {
    SandwichOptions opt;
    opt.tol = tol;
    opt.jobs = jobs;
    CoverCache cache(tol, opt.budget);
    DirectSumReport rep;
    rep.i = i;
    MinimaTable tk = detail::sandwich_table_t(k, opt, cache);
    MinimaTable tl = detail::sandwich_table_t(l, opt, cache);
    auto [entry, j] = direct_sum_entry(tk, tl, i);
    rep.rhs = entry.interval();
    rep.j = j;

    Polytope s = direct_sum(k, l);
    IndexSet first = IndexSet::range(k.dim());
    IndexSet second = first.complement(s.dim());
    MinimaTable tp = detail::sandwich_table_t(coord_project(s, first), opt, cache);
    MinimaTable ts = detail::sandwich_table_t(coord_slice(s, second).body, opt, cache);
    BoundReport pb = projection_bound(tp, ts, i, s.contains_origin());
    rep.projection_value = pb.value;
    rep.projection_matches = pb.value == rep.rhs;

    SandwichOptions whole = opt;
    whole.direct_sum_split = false;
    rep.sandwich = detail::sandwich_t(s, i, whole, cache);
    rep.sandwich_contains = rep.sandwich.lower - tol <= rep.rhs.hi() && rep.rhs.lo() <= rep.sandwich.upper + tol;

    if (i == s.dim()) {
        CoveringOptions co;
        co.tol = tol;
        auto cs = covering_radius(s, Lattice::standard(s.dim()), co).interval;
        auto ck = covering_radius(k, Lattice::standard(k.dim()), co).interval;
        auto cl = covering_radius(l, Lattice::standard(l.dim()), co).interval;
        rep.sum_radius = cs;
        rep.radius_sum = ck + cl;
        rep.additive = abs(cs.mid() - rep.radius_sum->mid()) <= 2 * tol;
    }
    return rep;
}

} // namespace covmin
