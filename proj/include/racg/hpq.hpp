#pragma once

// Pseudo-Riemannian hyperbolic space H^{p,q}: the projectivized negative cone
// of the form diag(+1 x p, -1 x (q+1)) on R^{p+q+1}.

#include "errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

namespace racg {

class StandardForm {
public:
    StandardForm(int p, int q) : p_(p), q_(q) {
        if (p < 1 || q < 0) throw ConfigError("standard form needs p >= 1 and q >= 0");
        j_ = Eigen::VectorXd::Ones(dim());
        j_.tail(q + 1).setConstant(-1.0);
    }

    int p() const { return p_; }
    int q() const { return q_; }
    Eigen::Index dim() const { return p_ + q_ + 1; }

    double pair(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const { return v.dot(j_.cwiseProduct(w)); }
    double norm2(const Eigen::VectorXd& v) const { return pair(v, v); }

    Eigen::MatrixXd j() const { return j_.asDiagonal(); }
    const Eigen::VectorXd& j_diag() const { return j_; }

    /// g^{-1} = J g^T J for g in O(p, q+1).
    Eigen::MatrixXd group_inverse(const Eigen::MatrixXd& g) const {
        return j_.asDiagonal() * g.transpose() * j_.asDiagonal();
    }

    /// max |g^T J g - J|.
    double group_residual(const Eigen::MatrixXd& g) const {
        return (g.transpose() * j_.asDiagonal() * g - j()).cwiseAbs().maxCoeff();
    }

    /// max |Y^T J + J Y|: zero exactly on o(p, q+1).
    double algebra_residual(const Eigen::MatrixXd& y) const {
        return (y.transpose() * j_.asDiagonal() + j_.asDiagonal() * y).cwiseAbs().maxCoeff();
    }

    friend bool operator==(const StandardForm& a, const StandardForm& b) { return a.p_ == b.p_ && a.q_ == b.q_; }

private:
    int p_, q_;
    Eigen::VectorXd j_;
};

/// Representative with <x, x> = -1. The sign of v is kept.
inline Eigen::VectorXd unit_lift(const StandardForm& f, const Eigen::VectorXd& v) {
    const double n2 = f.norm2(v);
    if (!(n2 < 0)) throw DomainError("point is not in H^{p,q} (<v,v> = " + std::to_string(n2) + ")");
    return v / std::sqrt(-n2);
}

enum class PairType { Equal, Spacelike, Lightlike, Timelike };

inline const char* to_string(PairType t) {
    switch (t) {
        case PairType::Equal: return "equal";
        case PairType::Spacelike: return "spacelike";
        case PairType::Lightlike: return "lightlike";
        default: return "timelike";
    }
}

constexpr double lightlike_band = 1e-9;

inline PairType classify_pair(const StandardForm& f, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::VectorXd xh = unit_lift(f, x), yh = unit_lift(f, y);
    const double c = f.pair(xh, yh);
    const Eigen::VectorXd ys = c < 0 ? yh : Eigen::VectorXd(-yh);
    if ((xh - ys).norm() <= 1e-12 * std::max(1.0, xh.norm())) return PairType::Equal;
    const double gap = std::abs(c) - 1.0;
    if (gap > lightlike_band) return PairType::Spacelike;
    if (gap < -lightlike_band) return PairType::Timelike;
    return PairType::Lightlike;
}

/// arccosh |<x^, y^>| on spacelike pairs, 0 otherwise.
inline double pseudo_distance(const StandardForm& f, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double c = std::abs(f.pair(unit_lift(f, x), unit_lift(f, y)));
    return c > 1.0 ? std::acosh(c) : 0.0;
}

/// Half the log cross-ratio of a, x, y, b where a, b are the endpoints of
/// the line xy on the boundary quadric.
inline double cross_ratio_distance(const StandardForm& f, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd xh = unit_lift(f, x), yh = unit_lift(f, y);
    if (f.pair(xh, yh) > 0) yh = -yh;
    // v(s) = (1-s) x^ + s y^;  <v(s), v(s)> = A s^2 + B s + C.
    const double alpha = f.norm2(xh), beta = f.pair(xh, yh), gamma = f.norm2(yh);
    const double a2 = alpha - 2 * beta + gamma, b1 = 2 * (beta - alpha), c0 = alpha;
    const double disc = b1 * b1 - 4 * a2 * c0;
    if (!(disc > 0) || a2 == 0.0) throw DomainError("line does not cross the boundary twice: pair is not spacelike");
    const double qq = -0.5 * (b1 + std::copysign(std::sqrt(disc), b1));
    double s1 = qq / a2, s2 = c0 / qq;
    if (s1 > s2) std::swap(s1, s2);
    if (!(s1 < 0 && s2 > 1)) throw DomainError("boundary points do not separate x and y: pair is not spacelike");
    // [a, x, y, b] with x at s = 0, y at s = 1.
    const double cr = ((1 - s1) * s2) / ((-s1) * (s2 - 1));
    return 0.5 * std::log(cr);
}

/// cosh(s) x^ + sinh(s) v for a unit spacelike tangent v.
inline Eigen::VectorXd geodesic_point(const StandardForm& f, const Eigen::VectorXd& xh, const Eigen::VectorXd& v, double s) {
    if (std::abs(f.norm2(v) - 1.0) > 1e-10) throw DomainError("geodesic direction is not a unit spacelike vector");
    return std::cosh(s) * xh + std::sinh(s) * v;
}

/// Projection of v onto the tangent space x^-perp.
inline Eigen::VectorXd tangent_projection(const StandardForm& f, const Eigen::VectorXd& xh, const Eigen::VectorXd& v) {
    return v + f.pair(v, xh) * xh;
}

/// Derivative of the pseudo-distance when x, y move with velocities zx, zy
/// (tangent at unit_lift(x), unit_lift(y)).
inline double first_variation(const StandardForm& f, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                              const Eigen::VectorXd& zx, const Eigen::VectorXd& zy) {
    const Eigen::VectorXd xh = unit_lift(f, x);
    Eigen::VectorXd yh = unit_lift(f, y);
    Eigen::VectorXd wy = zy;
    // Tangents live on the lifts of the given representatives; flipping a
    // lift flips its tangent too.
    if (f.pair(xh, yh) > 0) {
        yh = -yh;
        wy = -wy;
    }
    const double c = -f.pair(xh, yh);
    if (!(c - 1.0 > lightlike_band)) throw DomainError("first variation needs a spacelike pair");
    const double delta = std::acosh(c), sh = std::sinh(delta);
    const Eigen::VectorXd vxy = (yh - c * xh) / sh;
    const Eigen::VectorXd vyx = (xh - c * yh) / sh;
    return -f.pair(zx, vxy) - f.pair(wy, vyx);
}

/// Y x^: the Killing field of Y in o(p, q+1) evaluated at x.
inline Eigen::VectorXd killing_value(const Eigen::MatrixXd& y, const Eigen::VectorXd& xh) { return y * xh; }

/// exp_x(h Z) along the geodesic with initial velocity Z in x^-perp.
inline Eigen::VectorXd exp_map(const StandardForm& f, const Eigen::VectorXd& xh, const Eigen::VectorXd& z, double h) {
    const double s = f.norm2(z);
    if (s > 1e-300) {
        const double n = std::sqrt(s);
        return std::cosh(h * n) * xh + (std::sinh(h * n) / n) * z;
    }
    if (s < -1e-300) {
        const double n = std::sqrt(-s);
        return std::cos(h * n) * xh + (std::sin(h * n) / n) * z;
    }
    return xh + h * z;
}

/// Some g in O(p, q+1) with g e_last = x^ (columns J-orthonormal).
inline Eigen::MatrixXd frame_at(const StandardForm& f, const Eigen::VectorXd& xh) {
    const Eigen::Index n = f.dim();
    std::vector<Eigen::VectorXd> pos, neg;
    neg.push_back(xh / std::sqrt(-f.norm2(xh)));
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(n, i);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : pos) v -= f.pair(v, b) * b;
            for (const auto& b : neg) v += f.pair(v, b) * b;
        }
        const double n2 = f.norm2(v);
        if (std::abs(n2) < 1e-8) continue;
        if (n2 > 0 && static_cast<int>(pos.size()) < f.p()) pos.push_back(v / std::sqrt(n2));
        else if (n2 < 0 && static_cast<int>(neg.size()) < f.q() + 1) neg.push_back(v / std::sqrt(-n2));
    }
    if (static_cast<int>(pos.size()) != f.p() || static_cast<int>(neg.size()) != f.q() + 1)
        throw NumericalError("frame construction failed");
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < f.p(); ++i) g.col(i) = pos[static_cast<std::size_t>(i)];
    // Last column is x^, the other negative directions fill the middle.
    for (int i = 1; i <= f.q(); ++i) g.col(f.p() + i - 1) = neg[static_cast<std::size_t>(i)];
    g.col(n - 1) = neg[0];
    return g;
}

/// Basis Y = J A (A antisymmetric) of o(p, q+1).
inline std::vector<Eigen::MatrixXd> algebra_basis(const StandardForm& f) {
    std::vector<Eigen::MatrixXd> out;
    const Eigen::Index n = f.dim();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
            a(i, j) = 1.0;
            a(j, i) = -1.0;
            out.push_back(f.j() * a);
        }
    return out;
}

/// Truncated series for exp(Y), scaled and squared for accuracy.
inline Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& y) {
    const double norm = y.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::pow(2.0, squarings) > 0.5) ++squarings;
    const Eigen::MatrixXd a = y / std::pow(2.0, squarings);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(y.rows(), y.cols());
    Eigen::MatrixXd sum = term;
    for (int k = 1; k <= 20; ++k) {
        term = term * a / k;
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

}  // namespace racg
