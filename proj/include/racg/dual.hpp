#pragma once

// Forward-mode dual numbers a + b·ε with ε² = 0. T may be a scalar or a
// matrix type; only +, -, * and scalar construction are required, and
// multiplication keeps operand order so noncommutative T works.

#include <ostream>

namespace racg {

template <class T>
struct Dual {
    T value{};
    T deriv{};

    Dual() = default;
    Dual(T v, T d) : value(std::move(v)), deriv(std::move(d)) {}

    Dual& operator+=(const Dual& o) {
        value = value + o.value;
        deriv = deriv + o.deriv;
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        value = value - o.value;
        deriv = deriv - o.deriv;
        return *this;
    }

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return Dual(a.value * b.value, a.deriv * b.value + a.value * b.deriv);
    }
    friend bool operator==(const Dual& a, const Dual& b) {
        return a.value == b.value && a.deriv == b.deriv;
    }
};

template <class T>
Dual<T> constant(T v, T zero) {
    return Dual<T>(std::move(v), std::move(zero));
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Dual<T>& d) {
    return os << d.value << " + " << d.deriv << "e";
}

}  // namespace racg
