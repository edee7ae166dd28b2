#pragma once

// Hilbert metrics of properly convex domains in an affine chart: the
// ellipsoid (ball) case in closed form and convex polytopes by ray casting,
// plus the angular metric on projective space.

#include "errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace racg {

/// 1/2 log [a, x, y, b] for collinear points in the order a, x, y, b.
inline double hilbert_distance_segment(const Eigen::VectorXd& a, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                       const Eigen::VectorXd& b, double tol = 1e-9) {
    const Eigen::VectorXd dir = b - a;
    const double len = dir.norm();
    if (len <= 0) throw DomainError("degenerate segment");
    auto param = [&](const Eigen::VectorXd& p) {
        const double s = (p - a).dot(dir) / (len * len);
        if ((a + s * dir - p).norm() > tol * std::max(1.0, len)) throw DomainError("points are not collinear");
        return s;
    };
    const double sx = param(x), sy = param(y);
    if (!(0 < sx && sx <= sy && sy < 1) && !(0 < sy && sy <= sx && sx < 1))
        throw DomainError("points are not ordered a, x, y, b with x, y interior");
    const double lo = std::min(sx, sy), hi = std::max(sx, sy);
    return 0.5 * std::log((hi * (1 - lo)) / (lo * (1 - hi)));
}

/// Hilbert metric of the open ball of radius r (the Klein model when r = 1).
inline double hilbert_distance_ball(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double r = 1.0) {
    if (!(x.norm() < r) || !(y.norm() < r)) throw DomainError("points must lie inside the ball");
    const Eigen::VectorXd d = y - x;
    const double dd = d.squaredNorm();
    if (dd == 0.0) return 0.0;
    // |x + s d|^2 = r^2
    const double bq = 2 * x.dot(d), cq = x.squaredNorm() - r * r;
    const double disc = bq * bq - 4 * dd * cq;
    const double qq = -0.5 * (bq + std::copysign(std::sqrt(disc), bq));
    double s1 = qq / dd, s2 = cq / qq;
    if (s1 > s2) std::swap(s1, s2);
    return 0.5 * std::log(((1 - s1) * s2) / ((-s1) * (s2 - 1)));
}

/// Convex polytope {z : normals[i] . z <= offsets[i]}.
struct Polytope {
    std::vector<Eigen::VectorXd> normals;
    std::vector<double> offsets;

    bool contains(const Eigen::VectorXd& z) const {
        for (std::size_t i = 0; i < normals.size(); ++i)
            if (!(normals[i].dot(z) < offsets[i])) return false;
        return true;
    }
};

/// Hilbert metric of a bounded convex polytope, exits found by ray-facet intersection.
inline double hilbert_distance_polytope(const Polytope& poly, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (!poly.contains(x) || !poly.contains(y)) throw DomainError("points must lie inside the polytope");
    const Eigen::VectorXd d = y - x;
    if (d.norm() == 0.0) return 0.0;
    double s_lo = -std::numeric_limits<double>::infinity(), s_hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.normals.size(); ++i) {
        const double nd = poly.normals[i].dot(d);
        const double slack = poly.offsets[i] - poly.normals[i].dot(x);
        if (nd > 0) s_hi = std::min(s_hi, slack / nd);
        else if (nd < 0) s_lo = std::max(s_lo, slack / nd);
    }
    if (!std::isfinite(s_lo) || !std::isfinite(s_hi)) throw DomainError("polytope is unbounded along the line");
    return 0.5 * std::log(((1 - s_lo) * s_hi) / ((-s_lo) * (s_hi - 1)));
}

/// Angle between the lines spanned by v and w, in [0, pi/2].
inline double spherical_distance(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
    const Eigen::VectorXd a = v.normalized(), b = w.normalized();
    const double theta = 2.0 * std::atan2((a - b).norm(), (a + b).norm());
    return std::min(theta, std::numbers::pi - theta);
}

}  // namespace racg
