#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "covmin/budget.hpp"
#include "covmin/interval.hpp"
#include "covmin/lattice.hpp"
#include "covmin/lp.hpp"
#include "covmin/polytope.hpp"

namespace covmin {

struct CoveringCertificate {
    Interval interval;
    RatVec deep_point;   ///< in the frame of the translated body
    RatVec shift;        ///< the body was translated by this vector before use
    std::uint64_t cells_explored = 0;
    std::uint64_t cover_tests = 0;
    Rat tolerance;
};

struct CoveringOptions {
    Rat tol = Rat(1, 10000);
    bool auto_translate = true;
    Budget budget = Budget::from_env();
    std::size_t max_cover_candidates = 8;
};

namespace detail {

// Branch and bound over the fundamental cell [0,1)^d of Z^d for the body K_t
// (the body in lattice coordinates). All values are integers in units of
// 1/(D 2^M): points are scaled by 2^M, and the facet functionals by D, so
// D g(u) = max_F A_F . u with integral A_F. Bodies whose exact D is huge use
// D = 2^40 and rounded A_F; every bound then carries the rounding error err_,
// and witnesses are still evaluated exactly.
class CoverSearch {
public:
    static constexpr int M = 40;

    CoverSearch(const Polytope& kt, const CoveringOptions& opt) : d_(kt.dim()), opt_(opt) {
        // smallest D making every A_F = D a_F / b_F integral; when it is too
        // large, D = 2^40 with rounded A_F and a certified error term instead
        Int dl(1);
        for (const auto& f : kt.facets())
            for (const auto& a : f.normal)
                dl = lcm(dl, den(a / f.offset));
        rounded_ = bit_size(dl) > 40;
        if (rounded_)
            dl = Int(1) << 40;
        dscale_ = dl;
        std::int64_t amax = 0;
        for (const auto& f : kt.facets()) {
            std::vector<std::int64_t> row(d_);
            std::vector<Rat> exact(d_);
            for (std::size_t j = 0; j < d_; ++j) {
                exact[j] = f.normal[j] / f.offset * Rat(dl);
                Int a = rounded_ ? floor(exact[j] + Rat(1, 2)) : num(exact[j]);
                if (bit_size(a) > 60)
                    fail(Errc::BudgetExceeded, "facet functional coefficients too large for the oracle");
                row[j] = to_i64(a);
                amax = std::max(amax, row[j] < 0 ? -row[j] : row[j]);
            }
            a_.push_back(std::move(row));
            ax_.push_back(std::move(exact));
        }
        amax_ = amax;
        box_ = kt.bounding_box();
    }

    CoveringCertificate run() {
        init_root();
        // stage tolerances 1/2, 1/4, ... down to the largest power of two <= tol
        std::vector<int> stages;
        for (int k = 1; k <= M - 8; ++k) {
            stages.push_back(k);
            if (Rat(1, 1) / pow2(k) <= opt_.tol)
                break;
        }
        require(Rat(1) / pow2(stages.back()) <= opt_.tol, Errc::BudgetExceeded, "tolerance below oracle resolution");
        for (int k : stages) {
            tau_ = scale() >> k;
            while (!queue_.empty() && queue_.top().ub > lo_floor_ + tau_) {
                Cell c = queue_.top();
                queue_.pop();
                process(std::move(c));
            }
        }
        i128 top = queue_.empty() ? lo_floor_ : queue_.top().ub;
        Rat unit = Rat(1) / Rat(from_i128(scale()));
        Rat hi = Rat(from_i128(top)) * unit;
        Rat lo = lo_ * unit;
        if (hi < lo)
            hi = lo;
        CoveringCertificate cert;
        cert.interval = Interval(lo, hi);
        cert.deep_point = deep_;
        for (auto& x : cert.deep_point)
            x /= Rat(from_i128(i128(1) << M));
        cert.cells_explored = cells_;
        cert.cover_tests = cover_tests_;
        cert.tolerance = opt_.tol;
        return cert;
    }

private:
    struct Cand {
        std::vector<std::int64_t> n;
        std::vector<i128> an;  // A_F . n, times 2^M
    };
    struct Cell {
        std::vector<i128> lo;  // scaled corner
        std::vector<int> e;    // edge length 2^-e per axis
        i128 ub;
        std::uint64_t seq;
        std::vector<std::uint32_t> cands;
    };
    struct Order {
        bool operator()(const Cell& a, const Cell& b) const {
            if (a.ub != b.ub)
                return a.ub < b.ub;
            return a.seq > b.seq;
        }
    };

    static Rat pow2(int k) { return Rat(from_i128(i128(1) << k)); }
    i128 scale() const { return static_cast<i128>(to_i64(dscale_)) << M; }

    i128 width(const Cell& c, std::size_t j) const { return i128(1) << (M - c.e[j]); }

    i128 facet_dot(std::size_t f, const std::vector<i128>& u) const {
        i128 s = 0;
        for (std::size_t j = 0; j < d_; ++j)
            s += a_[f][j] * u[j];
        return s;
    }

    // lower bound on D g(u - n) over the cell, via each facet separately
    i128 cand_lower(const std::vector<i128>& fmin, const Cand& z) const {
        i128 best = fmin[0] - z.an[0];
        for (std::size_t f = 1; f < fmin.size(); ++f)
            best = std::max(best, fmin[f] - z.an[f]);
        return best - err_;
    }

    std::vector<i128> facet_minima(const Cell& c) const {
        std::vector<i128> out(a_.size());
        for (std::size_t f = 0; f < a_.size(); ++f) {
            i128 s = facet_dot(f, c.lo);
            for (std::size_t j = 0; j < d_; ++j)
                if (a_[f][j] < 0)
                    s += a_[f][j] * width(c, j);
            out[f] = s;
        }
        return out;
    }

    void raise_lo(i128 v, const std::vector<i128>& point) {
        if (v > lo_floor_) {
            lo_ = Rat(from_i128(v));
            lo_floor_ = v;
            deep_ = RatVec(d_);
            for (std::size_t j = 0; j < d_; ++j)
                deep_[j] = Rat(from_i128(point[j]));
        }
    }

    void raise_lo(const Rat& v, const RatVec& point) {
        if (v > lo_) {
            lo_ = v;
            lo_floor_ = to_i128(floor(v));
            deep_ = point;
        }
    }

    // Evaluates the corners of c against its candidates, records exact corner
    // values, and tightens c.ub and the candidate list.
    void evaluate(Cell& c) {
        const std::size_t ncorner = std::size_t(1) << d_;
        std::vector<std::vector<i128>> ac(ncorner, std::vector<i128>(a_.size()));
        std::vector<std::vector<i128>> corners(ncorner, std::vector<i128>(d_));
        for (std::size_t m = 0; m < ncorner; ++m) {
            for (std::size_t j = 0; j < d_; ++j)
                corners[m][j] = c.lo[j] + ((m >> j) & 1 ? width(c, j) : 0);
            for (std::size_t f = 0; f < a_.size(); ++f)
                ac[m][f] = facet_dot(f, corners[m]);
        }
        std::vector<i128> fmin = facet_minima(c);
        std::vector<std::uint32_t> keep;
        std::vector<i128> cornerbest(ncorner, 0);
        std::vector<bool> seen(ncorner, false);
        i128 ub = c.ub;
        for (auto idx : c.cands) {
            const Cand& z = pool_[idx];
            if (cand_lower(fmin, z) > c.ub)
                continue;
            keep.push_back(idx);
            i128 worst = 0;
            for (std::size_t m = 0; m < ncorner; ++m) {
                i128 v = ac[m][0] - z.an[0];
                for (std::size_t f = 1; f < a_.size(); ++f)
                    v = std::max(v, ac[m][f] - z.an[f]);
                if (!seen[m] || v < cornerbest[m]) {
                    cornerbest[m] = v;
                    seen[m] = true;
                }
                if (m == 0 || v > worst)
                    worst = v;
            }
            ub = std::min(ub, worst + err_);
        }
        require(!keep.empty(), Errc::Inconsistent, "cell lost every lattice candidate");
        for (std::size_t m = 0; m < ncorner; ++m)
            raise_lo(cornerbest[m] - err_, corners[m]);
        c.ub = ub;
        c.cands.clear();
        for (auto idx : keep)
            if (cand_lower(fmin, pool_[idx]) <= ub)
                c.cands.push_back(idx);
    }

    void init_root() {
        Cell root;
        root.lo.assign(d_, 0);
        root.e.assign(d_, 0);
        root.seq = seq_++;
        // n = 0 gives an upper bound over the closed unit cube
        i128 ub0 = 0;
        const std::size_t ncorner = std::size_t(1) << d_;
        for (std::size_t m = 0; m < ncorner; ++m) {
            std::vector<i128> u(d_);
            for (std::size_t j = 0; j < d_; ++j)
                u[j] = (m >> j) & 1 ? (i128(1) << M) : 0;
            for (std::size_t f = 0; f < a_.size(); ++f)
                ub0 = std::max(ub0, facet_dot(f, u));
        }
        // rounding error for |u_j| <= 2^M is at most d 2^(M-1)
        if (rounded_)
            ub0 += (static_cast<i128>(d_) << (M - 1)) + 1;
        Rat r = Rat(from_i128(ub0)) / Rat(from_i128(scale()));
        std::vector<std::int64_t> nlo(d_), nhi(d_);
        std::uint64_t count = 1;
        for (std::size_t j = 0; j < d_; ++j) {
            nlo[j] = to_i64(ceil(-r * box_.hi[j]));
            nhi[j] = to_i64(floor(1 - r * box_.lo[j]));
            count *= static_cast<std::uint64_t>(nhi[j] - nlo[j] + 1);
            charge(count, opt_.budget.max_candidates, "covering radius candidates");
        }
        std::int64_t nmax = 1;
        for (std::size_t j = 0; j < d_; ++j)
            nmax = std::max({nmax, std::abs(nlo[j]), std::abs(nhi[j])});
        if (bit_size(Int(amax_)) + bit_size(Int(nmax + 1)) + bit_size(Int(d_)) + M + 2 > 124)
            fail(Errc::BudgetExceeded, "oracle fixed-point range exceeded");
        // |u_j| <= 2^M (nmax + 1) for every u = 2^M (t - n) in play
        if (rounded_)
            err_ = ((static_cast<i128>(d_) * (nmax + 1)) << (M - 1)) + 1;
        root.ub = ub0;
        std::vector<i128> fmin = facet_minima(root);
        std::vector<std::int64_t> n(nlo);
        while (true) {
            Cand z;
            z.n = n;
            for (std::size_t f = 0; f < a_.size(); ++f) {
                i128 s = 0;
                for (std::size_t j = 0; j < d_; ++j)
                    s += static_cast<i128>(a_[f][j]) * n[j];
                z.an.push_back(s << M);
            }
            if (cand_lower(fmin, z) <= ub0) {
                root.cands.push_back(static_cast<std::uint32_t>(pool_.size()));
                pool_.push_back(std::move(z));
            }
            std::size_t k = d_;
            bool done = true;
            while (k > 0) {
                --k;
                if (n[k] < nhi[k]) {
                    ++n[k];
                    done = false;
                    break;
                }
                n[k] = nlo[k];
            }
            if (done)
                break;
        }
        lo_floor_ = 0;
        lo_ = 0;
        deep_ = RatVec(d_);
        evaluate(root);
        ++cells_;
        queue_.push(std::move(root));
    }

    void process(Cell c) {
        ++cells_;
        charge(cells_, opt_.budget.max_cells, "covering radius cells");
        if (try_cover(c))
            return;
        std::size_t axis = 0;
        for (std::size_t j = 1; j < d_; ++j)
            if (c.e[j] < c.e[axis])
                axis = j;
        if (c.e[axis] >= M - 2)
            fail(Errc::BudgetExceeded, "covering radius cells reached the resolution limit");
        for (int half = 0; half < 2; ++half) {
            Cell child;
            child.lo = c.lo;
            child.e = c.e;
            child.e[axis] += 1;
            if (half)
                child.lo[axis] += width(child, axis);
            child.ub = c.ub;
            child.cands = c.cands;
            child.seq = seq_++;
            evaluate(child);
            queue_.push(std::move(child));
        }
    }

    // Checks whether the cell lies in the union of n + S K_t over its
    // candidates, with S = lo + tau. On success the cell is re-queued with
    // upper bound S; on failure an uncovered interior point raises lo.
    bool try_cover(Cell& c) {
        const i128 level = lo_floor_ + tau_;
        std::vector<i128> fmin = facet_minima(c);
        std::vector<std::uint32_t> rel;
        for (auto idx : c.cands)
            if (cand_lower(fmin, pool_[idx]) <= level)
                rel.push_back(idx);
        if (rel.size() < 2 || rel.size() > opt_.max_cover_candidates)
            return false;
        ++cover_tests_;
        // nearest candidates first, measured at the cell centre
        std::vector<i128> mid(d_);
        for (std::size_t j = 0; j < d_; ++j)
            mid[j] = c.lo[j] + width(c, j) / 2;
        auto at_mid = [&](std::uint32_t idx) {
            i128 v = facet_dot(0, mid) - pool_[idx].an[0];
            for (std::size_t f = 1; f < a_.size(); ++f)
                v = std::max(v, facet_dot(f, mid) - pool_[idx].an[f]);
            return v;
        };
        std::stable_sort(rel.begin(), rel.end(),
                         [&](std::uint32_t x, std::uint32_t y) { return at_mid(x) < at_mid(y); });
        RatVec blo(d_), bhi(d_);
        for (std::size_t j = 0; j < d_; ++j) {
            blo[j] = Rat(from_i128(c.lo[j]));
            bhi[j] = Rat(from_i128(c.lo[j] + width(c, j)));
        }
        std::uint64_t lps = 0;
        bool exhausted = false;
        std::vector<HalfSpace> rows;
        auto witness = uncovered(rows, rel, 0, Rat(from_i128(level - err_)), blo, bhi, lps, exhausted);
        if (exhausted)
            return false;
        if (!witness) {
            c.ub = level;
            queue_.push(std::move(c));
            return true;
        }
        // exact value of the witness over every candidate that can matter
        Rat best;
        bool first = true;
        for (auto idx : c.cands) {
            Rat v;
            for (std::size_t f = 0; f < a_.size(); ++f) {
                Rat s(0);
                for (std::size_t j = 0; j < d_; ++j)
                    s += ax_[f][j] * ((*witness)[j] - Rat(from_i128(static_cast<i128>(pool_[idx].n[j]) << M)));
                if (f == 0 || s > v)
                    v = s;
            }
            if (first || v < best)
                best = v;
            first = false;
        }
        raise_lo(best, *witness);
        return false;
    }

    std::optional<RatVec> uncovered(const std::vector<HalfSpace>& rows, const std::vector<std::uint32_t>& rel,
                                    std::size_t k, const Rat& level, const RatVec& blo, const RatVec& bhi,
                                    std::uint64_t& lps, bool& exhausted) const {
        const Cand& z = pool_[rel[k]];
        std::vector<HalfSpace> piece = rows;
        for (std::size_t f = 0; f < a_.size(); ++f) {
            RatVec normal(d_);
            for (std::size_t j = 0; j < d_; ++j)
                normal[j] = Rat(a_[f][j]);
            Rat rhs = level + Rat(from_i128(z.an[f]));
            // outside facet f of n + S K_t, inside the earlier ones
            piece.push_back({-normal, -rhs});
            if (++lps > opt_.budget.max_cover_lps) {
                exhausted = true;
                return std::nullopt;
            }
            auto p = interior_point(piece, blo, bhi);
            if (p) {
                if (k + 1 == rel.size())
                    return p;
                auto w = uncovered(piece, rel, k + 1, level, blo, bhi, lps, exhausted);
                if (w || exhausted)
                    return w;
            }
            piece.back() = {normal, rhs};
        }
        return std::nullopt;
    }

    std::size_t d_;
    CoveringOptions opt_;
    Int dscale_;
    std::vector<std::vector<std::int64_t>> a_;
    std::vector<std::vector<Rat>> ax_;  // exact D a_F / b_F
    bool rounded_ = false;
    i128 err_ = 0;                      // bound on |D g - computed| in fixed point
    std::int64_t amax_ = 0;
    Box box_;
    std::vector<Cand> pool_;
    std::priority_queue<Cell, std::vector<Cell>, Order> queue_;
    Rat lo_{0};
    i128 lo_floor_ = 0;
    i128 tau_ = 0;
    RatVec deep_;
    std::uint64_t cells_ = 0, cover_tests_ = 0, seq_ = 0;
};

} // namespace detail

/// Certified enclosure of the covering radius mu(K, Lambda).
inline CoveringCertificate covering_radius(const Polytope& k, const Lattice& lat, const CoveringOptions& opt = {}) {
    require(k.dim() == lat.dim(), Errc::DimensionMismatch, "body and lattice dimensions differ");
    require(k.is_full_dimensional(), Errc::NotFullDimensional, "covering radius needs a full-dimensional body");
    require(opt.tol > 0, Errc::InvalidInput, "tolerance must be positive");
    RatVec shift(k.dim());
    Polytope body = k;
    if (opt.auto_translate) {
        shift = -k.centroid();
        body = k.translate(shift);
    } else {
        require(k.origin_interior(), Errc::OriginNotInterior, "origin is not interior to the body");
    }
    Polytope kt = lat.is_standard() ? body : body.linear_image(lat.inverse());
    detail::CoverSearch search(kt, opt);
    CoveringCertificate cert = search.run();
    cert.deep_point = lat.point(cert.deep_point);
    cert.shift = shift;
    return cert;
}

inline CoveringCertificate covering_radius(const Polytope& k, const Lattice& lat, const Rat& tol) {
    CoveringOptions opt;
    opt.tol = tol;
    return covering_radius(k, lat, opt);
}

} // namespace covmin
