#pragma once

// Univariate polynomials over Q with Sturm-sequence real root isolation.

#include "dense_matrix.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace racg {

class Polynomial {
public:
    Polynomial() = default;
    /// Coefficients in ascending degree.
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial monomial(const Rational& a, std::size_t degree) {
        std::vector<Rational> c(degree + 1);
        c[degree] = a;
        return Polynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    double operator()(double x) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Rational& s, const Polynomial& p) {
        std::vector<Rational> c = p.c_;
        for (auto& x : c) x *= s;
        return Polynomial(std::move(c));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// Euclidean division: returns (quotient, remainder).
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rational> r = c_;
        if (degree() < d.degree()) return {Polynomial(), *this};
        std::vector<Rational> q(c_.size() - d.c_.size() + 1);
        const Rational lead = d.leading();
        for (std::size_t k = q.size(); k-- > 0;) {
            const Rational f = r[k + d.c_.size() - 1] / lead;
            q[k] = f;
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] -= f * d.c_[j];
        }
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

    Polynomial monic() const {
        if (is_zero()) return {};
        return (Rational(1) / leading()) * *this;
    }

    /// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
    static Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
        if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
        Polynomial out;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            Polynomial basis(std::vector<Rational>{Rational(1)});
            Rational denom(1);
            for (std::size_t j = 0; j < xs.size(); ++j) {
                if (j == i) continue;
                basis = basis * Polynomial(std::vector<Rational>{-xs[j], Rational(1)});
                denom *= xs[i] - xs[j];
            }
            out = out + (ys[i] / denom) * basis;
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        const Rational& c = p.coeffs()[i];
        if (c.is_zero()) continue;
        os << (first ? "" : " + ") << "(" << c << ")";
        if (i >= 1) os << "t";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os;
}

/// Closed interval [lo, hi] with rational endpoints; lo == hi for exact roots.
struct RootInterval {
    Rational lo;
    Rational hi;
    double midpoint() const { return ((lo + hi) / Rational(2)).to_double(); }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    friend bool operator==(const RootInterval&, const RootInterval&) = default;
};

class SturmSequence {
public:
    explicit SturmSequence(const Polynomial& p) {
        if (p.is_zero()) throw std::invalid_argument("Sturm sequence of zero polynomial");
        seq_.push_back(p);
        seq_.push_back(p.derivative());
        while (!seq_.back().is_zero()) {
            const auto r = seq_[seq_.size() - 2].divmod(seq_.back()).second;
            seq_.push_back(Rational(-1) * r);
        }
        seq_.pop_back();
    }

    /// Sign changes at x with zeros dropped.
    int variations(const Rational& x) const {
        int count = 0;
        int prev = 0;
        for (const auto& s : seq_) {
            const int sg = s(x).sign();
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++count;
            prev = sg;
        }
        return count;
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

    const std::vector<Polynomial>& sequence() const { return seq_; }

private:
    std::vector<Polynomial> seq_;
};

/// Squarefree part p / gcd(p, p'); same real roots, all simple.
inline Polynomial squarefree(const Polynomial& p) {
    if (p.degree() <= 0) return p;
    const Polynomial g = gcd(p, p.derivative());
    return p.divmod(g).first;
}

/// Disjoint closed intervals, each holding exactly one distinct real root of
/// p in [lo, hi], sorted ascending. Roots hit exactly come back as [r, r].
inline std::vector<RootInterval> isolate_real_roots(const Polynomial& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    if (hi < lo) throw std::invalid_argument("isolate_real_roots: empty range");
    std::vector<RootInterval> out;
    if (p.degree() == 0) return out;
    const Polynomial q = squarefree(p);
    const SturmSequence sturm(q);
    const Rational two(2);

    // Roots in the open interval (a, b).
    auto open_count = [&](const Rational& a, const Rational& b) {
        return sturm.count(a, b) - (q(b).is_zero() ? 1 : 0);
    };

    if (q(lo).is_zero()) out.push_back({lo, lo});
    if (lo == hi) return out;

    struct Work {
        Rational a, b;
    };
    std::vector<Work> stack{{lo, hi}};
    std::vector<RootInterval> found;
    while (!stack.empty()) {
        Work w = stack.back();
        stack.pop_back();
        const int n = open_count(w.a, w.b);
        if (n == 0) continue;
        const Rational m = (w.a + w.b) / two;
        if (n == 1) {
            // Shrink until neither endpoint is a root, so intervals stay disjoint.
            Rational a = w.a, b = w.b;
            bool exact = false;
            while (q(a).is_zero() || q(b).is_zero()) {
                const Rational mid = (a + b) / two;
                if (q(mid).is_zero()) {
                    found.push_back({mid, mid});
                    exact = true;
                    break;
                }
                if (open_count(a, mid) == 1) b = mid; else a = mid;
            }
            // Pull both endpoints strictly inside so neighbours sharing an
            // endpoint become disjoint.
            const Rational a0 = a, b0 = b;
            while (!exact && (a == a0 || b == b0)) {
                const Rational mid = (a + b) / two;
                if (q(mid).is_zero()) {
                    found.push_back({mid, mid});
                    exact = true;
                    break;
                }
                if (q(a).sign() * q(mid).sign() < 0) b = mid; else a = mid;
            }
            if (!exact) found.push_back({a, b});
            continue;
        }
        if (q(m).is_zero()) found.push_back({m, m});
        stack.push_back({m, w.b});
        stack.push_back({w.a, m});
    }
    out.insert(out.end(), found.begin(), found.end());
    if (lo != hi && q(hi).is_zero()) out.push_back({hi, hi});
    std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return out;
}

/// Bisects an isolating interval of a simple root of p until its width is at most `width`.
inline RootInterval refine_root(const Polynomial& p, RootInterval iv, const Rational& width) {
    const Polynomial q = squarefree(p);
    const Rational two(2);
    while (iv.hi - iv.lo > width) {
        const Rational m = (iv.lo + iv.hi) / two;
        const int sm = q(m).sign();
        if (sm == 0) return {m, m};
        if (q(iv.lo).sign() * sm < 0) iv.hi = m; else iv.lo = m;
    }
    return iv;
}

/// det(Id + t·n) as a polynomial in t, by exact evaluation at k+1 integer
/// points and interpolation.
inline Polynomial det_polynomial(const RationalMatrix& n) {
    if (!n.is_square()) throw std::invalid_argument("det_polynomial: square matrix required");
    const std::size_t k = n.rows();
    std::vector<Rational> xs, ys;
    for (std::size_t i = 0; i <= k; ++i) {
        const Rational t(static_cast<long>(i));
        xs.push_back(t);
        ys.push_back((RationalMatrix::identity(k) + t * n).det());
    }
    return Polynomial::interpolate(xs, ys);
}

}  // namespace racg
