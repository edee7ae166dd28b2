#pragma once

// The projection Pi(g) = fixed point of x -> g^{-1} f(x) on real hyperbolic
// space H^n (form diag(+1 x n, -1), upper sheet), for a C-Lipschitz
// equivariant f with C < 1.
//
// Everything is templated on the scalar: near a fixed point at distance R
// from the origin, double evaluation of a fold-type map has noise ~ eps e^{2R},
// which for C close to 1 can exceed the stopping threshold tol (1 - C).

#include "errors.hpp"
#include "hpq.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <string>
#include <type_traits>

namespace racg {

template <class S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
S form_pair(const StandardForm& f, const VectorX<S>& v, const VectorX<S>& w) {
    return v.dot(f.j_diag().cast<S>().cwiseProduct(w));
}

template <class S>
MatrixX<S> group_inverse(const StandardForm& f, const MatrixX<S>& g) {
    const VectorX<S> j = f.j_diag().cast<S>();
    return j.asDiagonal() * g.transpose() * j.asDiagonal();
}

/// Upper-sheet unit representative.
template <class S>
VectorX<S> upper_lift(const StandardForm& f, const VectorX<S>& v) {
    using std::sqrt;
    const S n2 = form_pair(f, v, v);
    if (!(n2 < 0)) throw DomainError("point is not in H^{p,q} (<v,v> = " + std::to_string(static_cast<double>(n2)) + ")");
    VectorX<S> x = v / sqrt(-n2);
    if (x(x.size() - 1) < 0) x = -x;
    return x;
}

inline Eigen::VectorXd upper_lift(const StandardForm& f, const Eigen::VectorXd& v) { return upper_lift<double>(f, v); }

/// 2 asinh(|x - y| / 2) on the upper sheet; unlike arccosh <x, y> this stays
/// accurate for nearby points.
template <class S>
S hyperbolic_distance(const StandardForm& f, const VectorX<S>& x, const VectorX<S>& y) {
    using std::asinh, std::sqrt;
    const VectorX<S> d = x - y;
    const S n2 = form_pair(f, d, d);
    return n2 > 0 ? S(2) * asinh(S(0.5) * sqrt(n2)) : S(0);
}

inline double hyperbolic_distance(const StandardForm& f, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return hyperbolic_distance<double>(f, x, y);
}

template <class S>
struct BasicBanachResult {
    VectorX<S> point;  // upper sheet, <x, x> = -1
    int iterations = 0;
    int bound = 0;     // ceil(log(tol (1 - C) / d0) / log C), at least 0
    double initial_displacement = 0.0;
    double final_displacement = 0.0;
};

using BanachResult = BasicBanachResult<double>;

/// x_{n+1} = g^{-1} f(x_n), stopped at the first n with d(x_n, x_{n+1}) <
/// tol (1 - C); the returned point is then within tol C of the fixed point.
/// More than ten times the a priori number of steps is a NumericalError
/// (the map is not C-Lipschitz as claimed, or precision ran out).
template <class S>
BasicBanachResult<S> banach_projection(const StandardForm& form, const std::type_identity_t<std::function<VectorX<S>(const VectorX<S>&)>>& f,
                                       double c, const MatrixX<S>& g, const VectorX<S>& x0, double tol = 1e-10) {
    if (form.q() != 0) throw ConfigError("banach projection needs a Riemannian hyperbolic space (q = 0)");
    if (!(c > 0 && c < 1)) throw ConfigError("Lipschitz constant must lie in (0, 1), got " + std::to_string(c));
    if (!(tol > 0)) throw ConfigError("tolerance must be positive");
    const MatrixX<S> ginv = group_inverse(form, g);
    const MatrixX<S> id = MatrixX<S>::Identity(g.rows(), g.cols());
    const double scale = static_cast<double>(g.cwiseAbs().maxCoeff());
    if (static_cast<double>((ginv * g - id).cwiseAbs().maxCoeff()) > 1e-8 * std::max(1.0, scale * scale))
        throw ConfigError("g is not in O(n, 1)");
    auto step = [&](const VectorX<S>& x) { return upper_lift<S>(form, ginv * f(x)); };
    const double stop = tol * (1 - c);

    BasicBanachResult<S> out;
    VectorX<S> x = upper_lift<S>(form, x0);
    VectorX<S> y = step(x);
    double d = static_cast<double>(hyperbolic_distance<S>(form, x, y));
    out.initial_displacement = d;
    out.bound = d < stop ? 0 : static_cast<int>(std::ceil(std::log(stop / d) / std::log(c)));
    const int cap = 10 * std::max(out.bound, 1);
    while (!(d < stop)) {
        if (out.iterations >= cap)
            throw NumericalError("banach iteration did not converge within " + std::to_string(cap) + " steps (d = " + std::to_string(d) + ")");
        x = y;
        y = step(x);
        d = static_cast<double>(hyperbolic_distance<S>(form, x, y));
        ++out.iterations;
    }
    out.point = y;
    out.final_displacement = d;
    return out;
}

inline BanachResult banach_projection(const StandardForm& form, const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f, double c,
                                      const Eigen::MatrixXd& g, const Eigen::VectorXd& x0, double tol = 1e-10) {
    return banach_projection<double>(form, f, c, g, x0, tol);
}

}  // namespace racg
