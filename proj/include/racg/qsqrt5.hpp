#pragma once

// Exact arithmetic in Q(sqrt 5): a + b sqrt 5 with rational a, b.

#include "rational.hpp"

#include <array>
#include <cmath>
#include <compare>
#include <string>

namespace racg {

class QSqrt5 {
public:
    QSqrt5() = default;
    QSqrt5(Rational a, Rational b = Rational(0)) : a_(std::move(a)), b_(std::move(b)) {}
    QSqrt5(long a) : a_(a) {}

    static QSqrt5 phi() { return {Rational(1, 2), Rational(1, 2)}; }
    static QSqrt5 phi_inverse() { return {Rational(-1, 2), Rational(1, 2)}; }

    const Rational& rational_part() const { return a_; }
    const Rational& sqrt5_part() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    QSqrt5& operator+=(const QSqrt5& o) {
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    QSqrt5& operator-=(const QSqrt5& o) {
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    QSqrt5& operator*=(const QSqrt5& o) {
        const Rational a = a_ * o.a_ + Rational(5) * b_ * o.b_;
        b_ = a_ * o.b_ + b_ * o.a_;
        a_ = a;
        return *this;
    }
    friend QSqrt5 operator+(QSqrt5 x, const QSqrt5& y) { return x += y; }
    friend QSqrt5 operator-(QSqrt5 x, const QSqrt5& y) { return x -= y; }
    friend QSqrt5 operator*(QSqrt5 x, const QSqrt5& y) { return x *= y; }
    friend QSqrt5 operator-(const QSqrt5& x) { return {-x.a_, -x.b_}; }

    QSqrt5 conjugate() const { return {a_, -b_}; }
    Rational norm() const { return a_ * a_ - Rational(5) * b_ * b_; }
    QSqrt5 inverse() const {
        if (is_zero()) throw std::domain_error("QSqrt5: inverse of zero");
        const Rational n = norm();
        return {a_ / n, -b_ / n};
    }
    friend QSqrt5 operator/(const QSqrt5& x, const QSqrt5& y) { return x * y.inverse(); }

    /// Sign of a + b sqrt 5, exact.
    int sign() const {
        const int sa = a_.sign(), sb = b_.sign();
        if (sa == 0) return sb;
        if (sb == 0 || sa == sb) return sa;
        // opposite signs: compare a^2 with 5 b^2
        const int cmp = (a_ * a_ > Rational(5) * b_ * b_) ? 1 : (a_ * a_ == Rational(5) * b_ * b_ ? 0 : -1);
        return cmp * sa;
    }

    double to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(5.0); }
    std::string str() const { return "(" + a_.str() + ")+(" + b_.str() + ")*sqrt5"; }

    friend bool operator==(const QSqrt5& x, const QSqrt5& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend std::strong_ordering operator<=>(const QSqrt5& x, const QSqrt5& y) {
        const int s = (x - y).sign();
        return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    Rational a_, b_;
};

/// Quaternion a + b i + c j + d k over Q(sqrt 5).
struct Quaternion {
    std::array<QSqrt5, 4> c;

    friend Quaternion operator*(const Quaternion& x, const Quaternion& y) {
        const auto& [a1, b1, c1, d1] = x.c;
        const auto& [a2, b2, c2, d2] = y.c;
        return {{a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2, a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                 a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2, a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2}};
    }
    Quaternion conjugate() const { return {{c[0], -c[1], -c[2], -c[3]}}; }
    friend bool operator==(const Quaternion&, const Quaternion&) = default;
    friend auto operator<=>(const Quaternion& x, const Quaternion& y) { return x.c <=> y.c; }
};

/// Euclidean inner product in R^4.
inline QSqrt5 dot(const Quaternion& x, const Quaternion& y) {
    QSqrt5 s;
    for (int i = 0; i < 4; ++i) s += x.c[static_cast<std::size_t>(i)] * y.c[static_cast<std::size_t>(i)];
    return s;
}

}  // namespace racg
