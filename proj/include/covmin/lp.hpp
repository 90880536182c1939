#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "covmin/linalg.hpp"

namespace covmin {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class T>
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    T value{0};
    std::vector<T> x;
};

/// Exact dense simplex for  max c.x  s.t.  A x <= b, x >= 0.
///
/// Two-phase tableau method with Bland's pivoting rule, so it terminates on
/// degenerate problems without any tolerance. T must be an exact ordered field.
template <class T>
class Simplex {
public:
    Simplex(const Matrix<T>& a, const std::vector<T>& b, const std::vector<T>& c)
        : m_(b.size()), n_(c.size()), basic_(m_), nonbasic_(n_ + 1),
          d_(m_ + 2, std::vector<T>(n_ + 2, T(0))) {
        require(a.rows() == m_ && (m_ == 0 || a.cols() == n_), Errc::DimensionMismatch, "LP shape");
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j)
                d_[i][j] = a(i, j);
            basic_[i] = static_cast<long>(n_ + i);
            d_[i][n_] = T(-1);
            d_[i][n_ + 1] = b[i];
        }
        for (std::size_t j = 0; j < n_; ++j) {
            nonbasic_[j] = static_cast<long>(j);
            d_[m_][j] = -c[j];
        }
        nonbasic_[n_] = -1;
        d_[m_ + 1][n_] = T(1);
    }

    LpResult<T> solve() {
        LpResult<T> res;
        if (m_ > 0) {
            std::size_t r = 0;
            for (std::size_t i = 1; i < m_; ++i)
                if (d_[i][n_ + 1] < d_[r][n_ + 1])
                    r = i;
            if (d_[r][n_ + 1] < 0) {
                pivot(r, n_);
                if (!run(1) || d_[m_ + 1][n_ + 1] < 0) {
                    res.status = LpStatus::Infeasible;
                    return res;
                }
                for (std::size_t i = 0; i < m_; ++i) {
                    if (basic_[i] != -1)
                        continue;
                    std::size_t s = n_ + 1;
                    for (std::size_t j = 0; j <= n_; ++j)
                        if (d_[i][j] != 0 && (s == n_ + 1 || nonbasic_[j] < nonbasic_[s]))
                            s = j;
                    if (s != n_ + 1)
                        pivot(i, s);
                }
            }
        }
        if (!run(2)) {
            res.status = LpStatus::Unbounded;
            return res;
        }
        res.status = LpStatus::Optimal;
        res.x.assign(n_, T(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < n_)
                res.x[basic_[i]] = d_[i][n_ + 1];
        res.value = d_[m_][n_ + 1];
        return res;
    }

private:
    void pivot(std::size_t r, std::size_t s) {
        T inv = T(1) / d_[r][s];
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r || d_[i][s] == 0)
                continue;
            T f = d_[i][s] * inv;
            for (std::size_t j = 0; j < n_ + 2; ++j)
                if (j != s && d_[r][j] != 0)
                    d_[i][j] -= d_[r][j] * f;
            d_[i][s] = -f;
        }
        for (std::size_t j = 0; j < n_ + 2; ++j)
            if (j != s)
                d_[r][j] *= inv;
        d_[r][s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
    }

    bool run(int phase) {
        const std::size_t obj = phase == 1 ? m_ + 1 : m_;
        while (true) {
            // Bland: lowest-index improving column
            std::size_t s = n_ + 1;
            for (std::size_t j = 0; j <= n_; ++j) {
                if (phase == 2 && nonbasic_[j] == -1)
                    continue;
                if (d_[obj][j] < 0 && (s == n_ + 1 || nonbasic_[j] < nonbasic_[s]))
                    s = j;
            }
            if (s == n_ + 1)
                return true;
            std::size_t r = m_;
            T best_ratio(0);
            for (std::size_t i = 0; i < m_; ++i) {
                if (d_[i][s] <= 0)
                    continue;
                T ratio = d_[i][n_ + 1] / d_[i][s];
                if (r == m_ || ratio < best_ratio || (ratio == best_ratio && basic_[i] < basic_[r])) {
                    r = i;
                    best_ratio = ratio;
                }
            }
            if (r == m_)
                return false;
            pivot(r, s);
        }
    }

    std::size_t m_, n_;
    std::vector<long> basic_, nonbasic_;
    std::vector<std::vector<T>> d_;
};

template <class T>
LpResult<T> lp_maximize(const Matrix<T>& a, const std::vector<T>& b, const std::vector<T>& c) {
    return Simplex<T>(a, b, c).solve();
}

/// Constraint row  normal . x <= rhs.
struct HalfSpace {
    RatVec normal;
    Rat rhs;
};

/// A point strictly inside  {x in [lo, hi] : every row holds}, or nullopt when
/// that set has empty interior.
inline std::optional<RatVec> interior_point(const std::vector<HalfSpace>& rows, const RatVec& lo,
                                            const RatVec& hi) {
    const std::size_t d = lo.size();
    // variables y = x - lo >= 0 and slack margin e >= 0; maximise e
    const std::size_t m = rows.size() + 2 * d + 1;
    RatMat a(m, d + 1);
    std::vector<Rat> b(m), c(d + 1, Rat(0));
    c[d] = 1;
    std::size_t r = 0;
    for (const auto& h : rows) {
        for (std::size_t j = 0; j < d; ++j)
            a(r, j) = h.normal[j];
        a(r, d) = 1;
        b[r] = h.rhs - dot(h.normal, lo);
        ++r;
    }
    for (std::size_t j = 0; j < d; ++j) {
        a(r, j) = 1;
        a(r, d) = 1;
        b[r] = hi[j] - lo[j];
        ++r;
        a(r, j) = -1;
        a(r, d) = 1;
        b[r] = 0;
        ++r;
    }
    a(r, d) = 1;
    b[r] = 1;
    auto res = lp_maximize(a, b, c);
    if (res.status != LpStatus::Optimal || res.value <= 0)
        return std::nullopt;
    RatVec x(d);
    for (std::size_t j = 0; j < d; ++j)
        x[j] = lo[j] + res.x[j];
    return x;
}

} // namespace covmin
