#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covmin/error.hpp"
#include "covmin/rational.hpp"

namespace covmin {

/// Dense vector over a ring/field T with an explicit dimension.
template <class T>
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t n) : data_(n, T(0)) {}
    Vector(std::size_t n, const T& fill) : data_(n, fill) {}
    Vector(std::initializer_list<T> xs) : data_(xs) {}
    explicit Vector(std::vector<T> xs) : data_(std::move(xs)) {}

    static Vector unit(std::size_t n, std::size_t k) {
        Vector v(n);
        v[k] = T(1);
        return v;
    }

    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }
    auto begin() const { return data_.begin(); }
    auto end() const { return data_.end(); }
    auto begin() { return data_.begin(); }
    auto end() { return data_.end(); }
    const std::vector<T>& raw() const { return data_; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
    }

    Vector& operator+=(const Vector& o) {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i)
            data_[i] += o.data_[i];
        return *this;
    }
    Vector& operator-=(const Vector& o) {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i)
            data_[i] -= o.data_[i];
        return *this;
    }
    Vector& operator*=(const T& s) {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend Vector operator+(Vector a, const Vector& b) { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
    friend Vector operator*(const T& s, Vector a) { return a *= s; }
    friend Vector operator-(Vector a) {
        for (auto& x : a.data_)
            x = -x;
        return a;
    }
    friend bool operator==(const Vector& a, const Vector& b) { return a.data_ == b.data_; }
    friend bool operator<(const Vector& a, const Vector& b) { return a.data_ < b.data_; }

    friend T dot(const Vector& a, const Vector& b) {
        a.check_same(b);
        T s(0);
        for (std::size_t i = 0; i < a.size(); ++i)
            s += a.data_[i] * b.data_[i];
        return s;
    }

private:
    void check_same(const Vector& o) const {
        require(o.size() == size(), Errc::DimensionMismatch,
                "vector sizes " + std::to_string(size()) + " and " + std::to_string(o.size()));
    }

    std::vector<T> data_;
};

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            require(r.size() == cols_, Errc::DimensionMismatch, "ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }
    static Matrix from_rows(const std::vector<Vector<T>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == cols, Errc::DimensionMismatch, "row length mismatch");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix from_columns(const std::vector<Vector<T>>& cols, std::size_t rows) {
        return from_rows(cols, rows).transpose();
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector<T> row(std::size_t r) const {
        return Vector<T>(std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_));
    }
    Vector<T> col(std::size_t c) const {
        Vector<T> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }
    void set_row(std::size_t r, const Vector<T>& v) {
        for (std::size_t c = 0; c < cols_; ++c)
            (*this)(r, c) = v[c];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap((*this)(a, c), (*this)(b, c));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require(a.cols_ == b.rows_, Errc::DimensionMismatch, "matrix product shape");
        Matrix p(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    p(i, j) += a(i, k) * b(k, j);
            }
        return p;
    }
    friend Vector<T> operator*(const Matrix& a, const Vector<T>& x) {
        require(a.cols_ == x.size(), Errc::DimensionMismatch, "matrix-vector shape");
        Vector<T> y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                y[i] += a(i, k) * x[k];
        return y;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RatVec = Vector<Rat>;
using RatMat = Matrix<Rat>;
using IntVec = Vector<Int>;
using IntMat = Matrix<Int>;

inline std::string to_string(const RatVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

inline RatVec to_rat(const IntVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = Rat(v[i]);
    return r;
}

/// Reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(RatMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        m.swap_rows(p, r);
        Rat inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(RatMat m) { return rref(m).size(); }

inline std::size_t rank(const std::vector<RatVec>& rows, std::size_t dim) {
    if (rows.empty())
        return 0;
    return rank(RatMat::from_rows(rows, dim));
}

/// Basis of {x : M x = 0}.
inline std::vector<RatVec> nullspace(RatMat m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        RatVec v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rat det(RatMat m) {
    require(m.rows() == m.cols(), Errc::DimensionMismatch, "determinant of non-square matrix");
    Rat d(1);
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0)
            ++p;
        if (p == n)
            return Rat(0);
        if (p != c) {
            m.swap_rows(p, c);
            d = -d;
        }
        d *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0)
                continue;
            Rat f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

inline RatMat mat_inverse(const RatMat& m) {
    require(m.rows() == m.cols(), Errc::DimensionMismatch, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1)
        fail(Errc::Singular, "matrix is singular");
    RatMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

/// Unique solution of A x = b for square nonsingular A, or nullopt.
inline std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
    const std::size_t n = a.rows();
    RatMat aug(n, a.cols() + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = rref(aug);
    if (pivots.size() != a.cols() || (!pivots.empty() && pivots.back() == a.cols()))
        return std::nullopt;
    RatVec x(a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug(r, a.cols());
    return x;
}

/// Scales a rational vector to the primitive integer vector on the same ray.
inline IntVec primitive_integer(const RatVec& v) {
    Int l(1);
    for (const auto& x : v)
        l = lcm(l, den(x));
    IntVec out(v.size());
    Int g(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = num(v[i]) * (l / den(v[i]));
        g = gcd(g, out[i]);
    }
    if (g > 1)
        for (auto& x : out)
            x /= g;
    return out;
}

inline std::size_t affine_dimension(const std::vector<RatVec>& pts) {
    if (pts.empty())
        return 0;
    std::vector<RatVec> diffs;
    for (std::size_t k = 1; k < pts.size(); ++k)
        diffs.push_back(pts[k] - pts[0]);
    return rank(diffs, pts[0].size());
}

} // namespace covmin
