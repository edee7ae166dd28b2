#pragma once

// Eigenvalue and singular-value gauges: lambda_i (log-moduli of eigenvalues),
// mu_1 (log operator norm), proximality, the Finsler distance on the
// symmetric space, and orbit growth against lambda_1.

#include "errors.hpp"
#include "hpq.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace racg {

/// log|eigenvalue|, sorted descending.
inline std::vector<double> eig_log_moduli(const Eigen::MatrixXd& g) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(g, false);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
    std::vector<double> out;
    for (Eigen::Index i = 0; i < g.rows(); ++i) out.push_back(std::log(std::abs(es.eigenvalues()(i))));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

inline double lambda1(const Eigen::MatrixXd& g) { return eig_log_moduli(g).front(); }

/// log of the largest singular value.
inline double mu1(const Eigen::MatrixXd& g) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
    return std::log(svd.singularValues()(0));
}

inline bool is_proximal(const Eigen::MatrixXd& g, double gap_tol = 1e-6) {
    const auto l = eig_log_moduli(g);
    return l.size() < 2 || l[0] - l[1] > gap_tol;
}

/// mu_1(g^{-1} g').
inline double finsler_distance(const Eigen::MatrixXd& g, const Eigen::MatrixXd& gp) {
    return mu1(g.fullPivLu().solve(gp));
}

/// arccosh(exp(log_c)) without overflow.
inline double arccosh_from_log(double log_c) {
    if (log_c <= 0) return 0.0;
    if (log_c < 20) return std::acosh(std::exp(log_c));
    return log_c + std::log(2.0) + std::log1p(-0.25 * std::exp(-2 * log_c));
}

struct GrowthReport {
    std::vector<double> terms;  // (1/n) d(y, g^n y), n = 1..n_max
    double lambda1 = 0.0;
    double sup_term = 0.0;      // max over the second half n > n_max / 2
    double last_term = 0.0;
    bool proximal = false;
    double gap = 0.0;           // |last_term - lambda1|
    bool limsup_ok = false;     // sup_term <= lambda1 + 0.05 (1 + lambda1)
    double head_sup = 0.0;      // max over all n, for reference only
    bool convergence_ok = false;  // proximal and gap < 0.02 lambda1
};

/// (1/n) d(y, g^n y) for g in O(p, q+1), tracked on a log scale.
inline GrowthReport orbit_growth_check(const StandardForm& f, const Eigen::MatrixXd& g, const Eigen::VectorXd& y, int n_max) {
    GrowthReport rep;
    const Eigen::VectorXd yh = unit_lift(f, y);
    Eigen::VectorXd u = yh;
    double log_scale = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        u = g * u;
        const double s = u.norm();
        u /= s;
        log_scale += std::log(s);
        const double c = std::abs(f.pair(yh, u));
        const double d = c > 0 ? arccosh_from_log(log_scale + std::log(c)) : 0.0;
        rep.terms.push_back(d / n);
    }
    rep.lambda1 = std::max(0.0, lambda1(g));
    // Early terms carry d(y, axis) / n and say nothing about the limsup, so
    // the bound is checked on the tail.
    if (!rep.terms.empty()) {
        rep.head_sup = *std::max_element(rep.terms.begin(), rep.terms.end());
        rep.sup_term = *std::max_element(rep.terms.begin() + static_cast<std::ptrdiff_t>(rep.terms.size() / 2), rep.terms.end());
    }
    rep.last_term = rep.terms.empty() ? 0.0 : rep.terms.back();
    rep.proximal = is_proximal(g);
    rep.gap = std::abs(rep.last_term - rep.lambda1);
    rep.limsup_ok = rep.sup_term <= rep.lambda1 + 0.05 * (1 + rep.lambda1);
    rep.convergence_ok = rep.proximal && rep.gap < 0.02 * rep.lambda1;
    return rep;
}

}  // namespace racg
