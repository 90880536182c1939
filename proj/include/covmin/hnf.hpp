#pragma once

#include <tuple>
#include <vector>

#include "covmin/linalg.hpp"

namespace covmin {

struct HnfResult {
    IntMat h; ///< row Hermite normal form
    IntMat u; ///< unimodular transform, h = u * m
};

namespace detail {

inline std::tuple<Int, Int, Int> xgcd(const Int& a, const Int& b) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

// rows (i, j) <- (x*ri + y*rj, p*ri + q*rj)
inline void combine_rows(IntMat& m, std::size_t i, std::size_t j, const Int& x, const Int& y,
                         const Int& p, const Int& q) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
        Int a = m(i, c), b = m(j, c);
        m(i, c) = x * a + y * b;
        m(j, c) = p * a + q * b;
    }
}

inline void axpy_row(IntMat& m, std::size_t dst, const Int& f, std::size_t src) {
    for (std::size_t c = 0; c < m.cols(); ++c)
        m(dst, c) += f * m(src, c);
}

} // namespace detail

/// Row-style Hermite normal form, H = U * M.
///
/// Convention: H is in row echelon form (each pivot strictly right of the one
/// above it, zero rows last), pivots are positive, and every entry above a
/// pivot is reduced into [0, pivot).
inline HnfResult hnf(const IntMat& m) {
    IntMat h = m;
    IntMat u = IntMat::identity(m.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
        // fold every row below r into row r with gcd steps
        for (std::size_t i = r + 1; i < h.rows(); ++i) {
            if (h(i, c) == 0)
                continue;
            auto [g, x, y] = detail::xgcd(h(r, c), h(i, c));
            Int p = -h(i, c) / g, q = h(r, c) / g;
            detail::combine_rows(h, r, i, x, y, p, q);
            detail::combine_rows(u, r, i, x, y, p, q);
        }
        if (h(r, c) == 0)
            continue;
        if (h(r, c) < 0) {
            for (std::size_t k = 0; k < h.cols(); ++k)
                h(r, k) = -h(r, k);
            for (std::size_t k = 0; k < u.cols(); ++k)
                u(r, k) = -u(r, k);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int f = floor_div(h(i, c), h(r, c));
            if (f != 0) {
                detail::axpy_row(h, i, Int(-f), r);
                detail::axpy_row(u, i, Int(-f), r);
            }
        }
        ++r;
    }
    return {std::move(h), std::move(u)};
}

/// Basis (as rows, in Hermite normal form) of the integer kernel {t in Z^n : M t = 0}.
inline std::vector<IntVec> integer_kernel(const IntMat& m) {
    const std::size_t n = m.cols();
    // [M^T | I] -> U [M^T | I]; rows whose M^T part vanishes carry the kernel.
    IntMat aug(n, m.rows() + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m.rows(); ++k)
            aug(i, k) = m(k, i);
        aug(i, m.rows() + i) = 1;
    }
    auto [h, u] = hnf(aug);
    std::vector<IntVec> kernel;
    for (std::size_t i = 0; i < n; ++i) {
        bool zero = true;
        for (std::size_t k = 0; k < m.rows() && zero; ++k)
            zero = h(i, k) == 0;
        if (!zero)
            continue;
        IntVec v(n);
        for (std::size_t k = 0; k < n; ++k)
            v[k] = h(i, m.rows() + k);
        kernel.push_back(std::move(v));
    }
    if (kernel.empty())
        return kernel;
    IntMat km(kernel.size(), n);
    for (std::size_t i = 0; i < kernel.size(); ++i)
        for (std::size_t k = 0; k < n; ++k)
            km(i, k) = kernel[i][k];
    auto canon = hnf(km).h;
    kernel.clear();
    for (std::size_t i = 0; i < canon.rows(); ++i) {
        IntVec v = canon.row(i);
        if (!v.is_zero())
            kernel.push_back(std::move(v));
    }
    return kernel;
}

inline Int int_det(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rat(m(i, j));
    return num(det(r));
}

} // namespace covmin
