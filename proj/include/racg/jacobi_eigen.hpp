#pragma once

// Cyclic Jacobi eigensolver for small symmetric matrices. Deterministic:
// fixed rotation order, eigenpairs sorted by descending value, eigenvector
// signs fixed so the first entry of largest magnitude is positive.

#include "errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace racg {

struct SymmetricEigen {
    Eigen::VectorXd values;   // descending
    Eigen::MatrixXd vectors;  // columns, orthonormal
    double residual = 0.0;    // max of ||mV - V diag||_F and ||V^T V - I||_F
    int sweeps = 0;
};

inline SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& m, double tol = 1e-10) {
    const Eigen::Index n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("symmetric_eigen: square matrix required");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, m.cwiseAbs().maxCoeff()))
        throw NumericalError("symmetric_eigen: matrix not symmetric within tolerance");

    Eigen::MatrixXd a = 0.5 * (m + m.transpose());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double scale = std::max(a.norm(), 1e-300);
    constexpr double threshold = 1e-14;
    constexpr int max_sweeps = 100;

    auto off_norm = [&] {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (i != j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; sweep < max_sweeps && off_norm() > threshold * scale; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) > a(y, y); });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const Eigen::Index src = order[static_cast<std::size_t>(c)];
        out.values(c) = a(src, src);
        Eigen::VectorXd col = v.col(src);
        Eigen::Index big = 0;
        for (Eigen::Index k = 1; k < n; ++k)
            if (std::abs(col(k)) > std::abs(col(big)) + 1e-12) big = k;
        if (col(big) < 0) col = -col;
        out.vectors.col(c) = col;
    }
    const Eigen::MatrixXd& vv = out.vectors;
    const double r1 = (m * vv - vv * out.values.asDiagonal()).norm();
    const double r2 = (vv.transpose() * vv - Eigen::MatrixXd::Identity(n, n)).norm();
    out.residual = std::max(r1, r2);
    out.sweeps = sweep;
    if (out.residual > tol)
        throw NumericalError("symmetric_eigen: residual " + std::to_string(out.residual) + " exceeds tolerance");
    return out;
}

}  // namespace racg
