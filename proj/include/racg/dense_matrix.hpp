#pragma once

// Small dense row-major matrices over an exact field (Rational, QSqrt5).
// Floating point work goes through Eigen instead.

#include "errors.hpp"
#include "rational.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

namespace racg {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
            for (const auto& x : row) data_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, c); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!((*this)(i, j) == (*this)(j, i))) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!(x == T(0))) return false;
        return true;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t l = 0; l < a.cols_; ++l) {
                const T& ail = a(i, l);
                if (ail == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
            }
        return c;
    }

    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
        if (a.cols_ != v.size()) throw std::invalid_argument("Matrix: dimension mismatch in apply");
        std::vector<T> out(a.rows_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Exact determinant by fraction-based Gaussian elimination.
    T det() const {
        if (!is_square()) throw std::invalid_argument("Matrix: det of non-square matrix");
        Matrix a = *this;
        T d(1);
        const std::size_t n = rows_;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            while (piv < n && a(piv, c) == T(0)) ++piv;
            if (piv == n) return T(0);
            if (piv != c) {
                a.swap_rows(piv, c);
                d = -d;
            }
            d *= a(c, c);
            for (std::size_t r = c + 1; r < n; ++r) {
                if (a(r, c) == T(0)) continue;
                const T f = a(r, c) / a(c, c);
                for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
            }
        }
        return d;
    }

    /// Solves this·X = rhs exactly. Throws NumericalError when singular.
    Matrix solve(const Matrix& rhs) const {
        if (!is_square() || rhs.rows_ != rows_) throw std::invalid_argument("Matrix: bad solve dimensions");
        const std::size_t n = rows_;
        Matrix a = *this;
        Matrix b = rhs;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            while (piv < n && a(piv, c) == T(0)) ++piv;
            if (piv == n) throw NumericalError("singular matrix");
            a.swap_rows(piv, c);
            b.swap_rows(piv, c);
            const T inv = T(1) / a(c, c);
            for (std::size_t j = 0; j < n; ++j) a(c, j) *= inv;
            for (std::size_t j = 0; j < b.cols_; ++j) b(c, j) *= inv;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || a(r, c) == T(0)) continue;
                const T f = a(r, c);
                for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(c, j);
                for (std::size_t j = 0; j < b.cols_; ++j) b(r, j) -= f * b(c, j);
            }
        }
        return b;
    }

    Matrix inverse() const { return solve(identity(rows_)); }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }

    const std::vector<T>& data() const { return data_; }

private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: dimension mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using RationalVector = std::vector<Rational>;

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

inline Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_double();
    return out;
}

inline Eigen::VectorXd to_eigen(const RationalVector& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].to_double();
    return out;
}

inline RationalVector from_eigen_exact(const Eigen::VectorXd& v) {
    RationalVector out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = Rational::from_double(v(i));
    return out;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace racg
