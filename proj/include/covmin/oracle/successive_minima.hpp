#pragma once

#include <algorithm>
#include <vector>

#include "covmin/budget.hpp"
#include "covmin/lattice.hpp"
#include "covmin/polytope.hpp"

namespace covmin {

struct MinimaResult {
    std::vector<Rat> lambda;      ///< lambda_1 <= ... <= lambda_d
    std::vector<RatVec> witness;  ///< linearly independent lattice points, ambient coordinates
};

/// Successive minima of a symmetric body C (C = -C, origin interior).
inline MinimaResult successive_minima(const Polytope& c, const Lattice& lat,
                                      const Budget& budget = Budget::from_env()) {
    require(c.dim() == lat.dim(), Errc::DimensionMismatch, "body and lattice dimensions differ");
    require(c.is_full_dimensional(), Errc::NotFullDimensional, "successive minima need a full-dimensional body");
    require(c == c.negate(), Errc::NotSymmetric, "body is not symmetric about the origin");
    const std::size_t d = c.dim();
    Polytope ct = lat.is_standard() ? c : c.linear_image(lat.inverse());
    // the unit vectors give d independent points, so lambda_d <= r
    Rat r(0);
    for (std::size_t i = 0; i < d; ++i)
        r = std::max(r, gauge(ct, RatVec::unit(d, i)));
    Box bb = ct.bounding_box();
    for (std::size_t i = 0; i < d; ++i) {
        bb.lo[i] *= r;
        bb.hi[i] *= r;
    }
    std::vector<std::pair<Rat, RatVec>> pts;
    for (auto& t : lattice_points_in_box(Lattice::standard(d), bb, budget)) {
        // C is symmetric, so keep one sign: first nonzero coordinate positive
        auto lead = std::find_if(t.begin(), t.end(), [](const Rat& x) { return x != 0; });
        if (lead == t.end() || *lead < 0)
            continue;
        Rat g = gauge(ct, t);
        if (g <= r)
            pts.emplace_back(g, std::move(t));
    }
    std::sort(pts.begin(), pts.end());
    MinimaResult out;
    std::vector<RatVec> chosen;
    for (const auto& [g, t] : pts) {
        chosen.push_back(t);
        if (rank(chosen, d) < chosen.size()) {
            chosen.pop_back();
            continue;
        }
        out.lambda.push_back(g);
        out.witness.push_back(lat.point(t));
        if (chosen.size() == d)
            break;
    }
    require(out.lambda.size() == d, Errc::Inconsistent, "successive minima search lost a direction");
    return out;
}

} // namespace covmin
