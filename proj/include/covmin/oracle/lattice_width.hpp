#pragma once

#include <vector>

#include "covmin/budget.hpp"
#include "covmin/lattice.hpp"
#include "covmin/lp.hpp"
#include "covmin/polytope.hpp"

namespace covmin {

struct WidthResult {
    Rat width;
    IntVec functional;   ///< coordinates in the dual basis
    RatVec functional_x; ///< the same functional in ambient coordinates
};

namespace detail {

inline Rat width_along(const std::vector<RatVec>& verts, const RatVec& f) {
    Rat lo = dot(f, verts.front()), hi = lo;
    for (const auto& v : verts) {
        Rat s = dot(f, v);
        if (s < lo)
            lo = s;
        if (s > hi)
            hi = s;
    }
    return hi - lo;
}

// max f_i over {f : f.(v - w) <= 1 for all vertex pairs}, the polar of K - K
inline Rat polar_extent(const std::vector<RatVec>& verts, std::size_t i) {
    const std::size_t d = verts.front().size();
    std::vector<RatVec> rows;
    for (const auto& v : verts)
        for (const auto& w : verts)
            if (!(v == w))
                rows.push_back(v - w);
    // f = p - q with p, q >= 0
    RatMat a(rows.size(), 2 * d);
    std::vector<Rat> b(rows.size(), Rat(1)), c(2 * d, Rat(0));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t j = 0; j < d; ++j) {
            a(r, j) = rows[r][j];
            a(r, d + j) = -rows[r][j];
        }
    c[i] = 1;
    c[d + i] = -1;
    auto res = lp_maximize(a, b, c);
    require(res.status == LpStatus::Optimal, Errc::NotFullDimensional, "width needs a full-dimensional body");
    return res.value;
}

} // namespace detail

/// Exact lattice width min over nonzero dual lattice functionals f of the
/// range of f over K. Ties go to the lexicographically smallest functional
/// whose first nonzero coordinate is positive.
inline WidthResult lattice_width(const Polytope& k, const Lattice& lat, const Budget& budget = Budget::from_env()) {
    require(k.dim() == lat.dim(), Errc::DimensionMismatch, "body and lattice dimensions differ");
    require(k.is_full_dimensional(), Errc::NotFullDimensional, "width needs a full-dimensional body");
    const std::size_t d = k.dim();
    // in lattice coordinates the dual lattice is Z^d
    std::vector<RatVec> verts;
    for (const auto& v : k.vertices())
        verts.push_back(lat.coordinates(v));

    Rat best;
    IntVec arg(d);
    for (std::size_t i = 0; i < d; ++i) {
        Rat w = detail::width_along(verts, RatVec::unit(d, i));
        if (i == 0 || w < best) {
            best = w;
            arg = IntVec(d);
            arg[i] = 1;
        } else if (w == best) {
            IntVec cand(d);
            cand[i] = 1;
            if (cand < arg)
                arg = cand;
        }
    }
    // any f with width(f) <= best lies in best (K - K)^polar
    std::vector<std::int64_t> lim(d);
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) {
        lim[i] = to_i64(floor(best * detail::polar_extent(verts, i)));
        count *= static_cast<std::uint64_t>(2 * lim[i] + 1);
        charge(count, budget.max_candidates, "lattice width candidates");
    }
    std::vector<std::int64_t> f(d);
    for (std::size_t i = 0; i < d; ++i)
        f[i] = -lim[i];
    while (true) {
        std::size_t lead = 0;
        while (lead < d && f[lead] == 0)
            ++lead;
        if (lead < d && f[lead] > 0) {
            RatVec fr(d);
            IntVec fi(d);
            for (std::size_t i = 0; i < d; ++i) {
                fr[i] = Rat(f[i]);
                fi[i] = Int(f[i]);
            }
            Rat w = detail::width_along(verts, fr);
            if (w < best || (w == best && fi < arg)) {
                best = w;
                arg = fi;
            }
        }
        std::size_t j = d;
        bool done = true;
        while (j > 0) {
            --j;
            if (f[j] < lim[j]) {
                ++f[j];
                done = false;
                break;
            }
            f[j] = -lim[j];
        }
        if (done)
            break;
    }
    return {best, arg, lat.dual_basis() * to_rat(arg)};
}

} // namespace covmin
