#pragma once

#include <algorithm>
#include <vector>

#include "covmin/budget.hpp"
#include "covmin/hnf.hpp"
#include "covmin/linalg.hpp"

namespace covmin {

/// Full-rank lattice B Z^d. Basis vectors are the columns of B, so a point x
/// has lattice coordinates t = B^{-1} x and lies in the lattice iff t is integral.
class Lattice {
public:
    explicit Lattice(RatMat basis) : basis_(std::move(basis)) {
        require(basis_.rows() == basis_.cols(), Errc::DimensionMismatch, "lattice basis must be square");
        inverse_ = mat_inverse(basis_);
        dual_ = inverse_.transpose();
    }

    static Lattice standard(std::size_t d) { return Lattice(RatMat::identity(d)); }
    static Lattice from_vectors(const std::vector<RatVec>& vectors) {
        require(!vectors.empty(), Errc::InvalidInput, "empty lattice basis");
        return Lattice(RatMat::from_columns(vectors, vectors[0].size()));
    }

    std::size_t dim() const { return basis_.rows(); }
    const RatMat& basis() const { return basis_; }
    const RatMat& inverse() const { return inverse_; }
    /// Columns form the dual basis: dual^T * basis = I.
    const RatMat& dual_basis() const { return dual_; }
    Lattice dual() const { return Lattice(dual_); }

    RatVec vector(std::size_t k) const { return basis_.col(k); }
    RatVec coordinates(const RatVec& x) const { return inverse_ * x; }
    RatVec point(const RatVec& t) const { return basis_ * t; }

    bool contains(const RatVec& x) const {
        auto t = coordinates(x);
        return std::all_of(t.begin(), t.end(), [](const Rat& c) { return is_integer(c); });
    }

    bool is_standard() const { return basis_ == RatMat::identity(dim()); }

    /// Same group of points (bases differ by a unimodular change).
    bool same_lattice(const Lattice& o) const {
        if (o.dim() != dim())
            return false;
        RatMat change = inverse_ * o.basis_;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                if (!is_integer(change(i, j)))
                    return false;
        return abs(det(change)) == 1;
    }

private:
    RatMat basis_;
    RatMat inverse_;
    RatMat dual_;
};

/// Basis of the group generated by finitely many rational vectors.
///
/// The generators are scaled by the LCM D of their denominators, so they
/// generate a subgroup of (1/D) Z^n; a subgroup of a discrete group is
/// discrete, so this can never fail with a non-discrete result.
inline std::vector<RatVec> group_basis(const std::vector<RatVec>& generators, std::size_t ambient_dim,
                                       const Budget& budget = {}) {
    Int l(1);
    for (const auto& g : generators) {
        require(g.size() == ambient_dim, Errc::DimensionMismatch, "generator dimension");
        for (const auto& x : g)
            l = lcm(l, den(x));
        if (bit_size(l) > budget.max_lcm_bits)
            fail(Errc::BudgetExceeded, "common denominator exceeds " +
                                           std::to_string(budget.max_lcm_bits) + " bits");
    }
    IntMat m(generators.size(), ambient_dim);
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = 0; j < ambient_dim; ++j)
            m(i, j) = num(generators[i][j] * Rat(l));
    auto h = hnf(m).h;
    std::vector<RatVec> out;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        IntVec r = h.row(i);
        if (r.is_zero())
            continue;
        RatVec v(ambient_dim);
        for (std::size_t j = 0; j < ambient_dim; ++j)
            v[j] = Rat(r[j], l);
        out.push_back(std::move(v));
    }
    return out;
}

/// Basis of Lambda ∩ V where V is the span of the given rational vectors.
inline std::vector<RatVec> lattice_slice(const Lattice& lat, const std::vector<RatVec>& spanning) {
    const std::size_t d = lat.dim();
    std::vector<RatVec> normals;
    if (spanning.empty()) {
        for (std::size_t k = 0; k < d; ++k)
            normals.push_back(RatVec::unit(d, k));
    } else {
        normals = nullspace(RatMat::from_rows(spanning, d));
    }
    if (normals.empty()) {
        std::vector<RatVec> all;
        for (std::size_t k = 0; k < d; ++k)
            all.push_back(lat.vector(k));
        return group_basis(all, d);
    }
    // N B t = 0 for integral t, rows scaled to integers
    RatMat nb = RatMat::from_rows(normals, d) * lat.basis();
    IntMat m(nb.rows(), d);
    for (std::size_t i = 0; i < nb.rows(); ++i) {
        IntVec row = primitive_integer(nb.row(i));
        for (std::size_t j = 0; j < d; ++j)
            m(i, j) = row[j];
    }
    std::vector<RatVec> out;
    for (const auto& t : integer_kernel(m))
        out.push_back(lat.point(to_rat(t)));
    return out;
}

/// Axis-aligned closed box [lo, hi].
struct Box {
    RatVec lo;
    RatVec hi;
};

/// Every lattice point inside the closed box, sorted lexicographically.
inline std::vector<RatVec> lattice_points_in_box(const Lattice& lat, const Box& box,
                                                 const Budget& budget = Budget::from_env()) {
    const std::size_t d = lat.dim();
    require(box.lo.size() == d && box.hi.size() == d, Errc::DimensionMismatch, "box dimension");
    for (std::size_t i = 0; i < d; ++i)
        require(box.lo[i] <= box.hi[i], Errc::InvalidInput, "box with lo > hi");
    // coordinate range of B^{-1} over the box: each coordinate is linear, so
    // its extremes are taken at box corners chosen by coefficient sign
    std::vector<Int> tlo(d), thi(d);
    std::uint64_t count = 1;
    for (std::size_t r = 0; r < d; ++r) {
        Rat mn(0), mx(0);
        for (std::size_t c = 0; c < d; ++c) {
            const Rat& a = lat.inverse()(r, c);
            if (a >= 0) {
                mn += a * box.lo[c];
                mx += a * box.hi[c];
            } else {
                mn += a * box.hi[c];
                mx += a * box.lo[c];
            }
        }
        tlo[r] = ceil(mn);
        thi[r] = floor(mx);
        if (thi[r] < tlo[r])
            return {};
        Int span = thi[r] - tlo[r] + 1;
        if (bit_size(span) > 40)
            fail(Errc::BudgetExceeded, "box enumeration range too large");
        count *= span.convert_to<std::uint64_t>();
        charge(count, budget.max_candidates, "lattice_points_in_box candidates");
    }
    std::vector<RatVec> out;
    if (d == 0)
        return out;
    IntVec t(d);
    for (std::size_t i = 0; i < d; ++i)
        t[i] = tlo[i];
    while (true) {
        RatVec x = lat.point(to_rat(t));
        bool inside = true;
        for (std::size_t i = 0; i < d && inside; ++i)
            inside = box.lo[i] <= x[i] && x[i] <= box.hi[i];
        if (inside)
            out.push_back(std::move(x));
        std::size_t k = d;
        while (k > 0) {
            --k;
            if (t[k] < thi[k]) {
                t[k] += 1;
                break;
            }
            t[k] = tlo[k];
            if (k == 0) {
                std::sort(out.begin(), out.end());
                return out;
            }
        }
    }
}

} // namespace covmin
