#pragma once

// Exact rationals backed by GMP. Always in lowest terms with a positive
// denominator (mpq_canonicalize is applied on every construction path).

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace racg {

class Rational {
public:
    Rational() = default;

    template <std::integral I>
    Rational(I n) : v_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)

    template <std::integral I, std::integral J>
    Rational(I num, J den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
        v_.canonicalize();
    }

    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    /// Parses "p/q", "p" or "-p/q". Whitespace and decimals are rejected so
    /// that command-line parameters stay exact.
    static Rational parse(std::string_view text) {
        if (text.empty()) throw std::invalid_argument("empty rational");
        const auto slash = text.find('/');
        auto check_int = [&](std::string_view s) {
            std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
            if (i == s.size()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
            for (; i < s.size(); ++i)
                if (s[i] < '0' || s[i] > '9')
                    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        };
        auto to_mpz = [](std::string_view s) {
            if (!s.empty() && s[0] == '+') s.remove_prefix(1);
            return mpz_class(std::string(s));
        };
        if (slash == std::string_view::npos) {
            check_int(text);
            return Rational(to_mpz(text), mpz_class(1));
        }
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        check_int(num);
        check_int(den);
        if (den[0] == '-' || den[0] == '+')
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        const mpz_class d = to_mpz(den);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(to_mpz(num), d);
    }

    /// Exact binary value of a finite double.
    static Rational from_double(double x) { return Rational(mpq_class(x)); }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    double to_double() const { return v_.get_d(); }
    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }

    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace racg
