#pragma once

// 50-digit replay of the normalization and the cocycle. In binary64 the
// rounding of u(b) alone is amplified by Ad(rho.(a)) to about
// eps |rho.(a)|^2 |u(b)|, which for words of length 8 is far above 1e-9, so
// identities that mix long words are checked here instead.
//
// The eigenbasis of N is refined from the double one (Jacobi sweeps in
// extended precision, then each eigenspace basis is re-aligned with the
// double vectors), so the precise iota matches Normalizer::iota() to double
// accuracy rather than being some other valid normalization.

#include "normalization.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace racg::precise {

using Real = boost::multiprecision::cpp_bin_float_50;
using MatrixP = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using VectorP = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

inline Real to_real(const Rational& r) { return Real(r.numerator().get_str()) / Real(r.denominator().get_str()); }

inline MatrixP to_real(const RationalMatrix& m) {
    MatrixP out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_real(m(i, j));
    return out;
}

inline double max_abs(const MatrixP& m) { return static_cast<double>(m.cwiseAbs().maxCoeff()); }

/// Cyclic Jacobi on a symmetric matrix; returns (diagonal, rotations).
inline std::pair<VectorP, MatrixP> jacobi(MatrixP a) {
    const Eigen::Index n = a.rows();
    MatrixP v = MatrixP::Identity(n, n);
    const Real tiny("1e-45");
    for (int sweep = 0; sweep < 60; ++sweep) {
        Real off = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < tiny * tiny) break;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0) continue;
                const Real theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
                const Real t = (theta >= 0 ? Real(1) : Real(-1)) / (abs(theta) + sqrt(theta * theta + 1));
                const Real c = 1 / sqrt(t * t + 1), s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Real akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Real apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Real vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    return {a.diagonal(), v};
}

class PreciseNormalizer {
public:
    PreciseNormalizer(const GramFamily& fam, const Normalizer& ref) : t_(ref.t()) {
        const MatrixP n = to_real(fam.n);
        // The double basis is orthonormal only to ~1e-16; fix that first so
        // the Jacobi sweeps below act by a genuine similarity.
        MatrixP vf = ref.basis().cast<Real>();
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index i = 0; i < vf.cols(); ++i) {
                for (Eigen::Index j = 0; j < i; ++j) vf.col(i) -= vf.col(j).dot(vf.col(i)) * vf.col(j);
                vf.col(i) /= sqrt(vf.col(i).dot(vf.col(i)));
            }
        const auto [vals, rot] = jacobi(MatrixP(vf.transpose() * n * vf));
        const MatrixP vp = vf * rot;
        const Eigen::Index k = n.rows();

        // Re-align each eigenspace with the double eigenvectors.
        MatrixP aligned(k, k);
        VectorP nu(k);
        const Real cluster_tol("1e-30");
        for (Eigen::Index i = 0; i < k; ++i) {
            const double target = ref.nu()(i);
            MatrixP proj = MatrixP::Zero(k, k);
            Real mean = 0;
            int count = 0;
            for (Eigen::Index j = 0; j < k; ++j)
                if (abs(vals(j) - Real(target)) < Real("1e-8")) {
                    proj += vp.col(j) * vp.col(j).transpose();
                    mean += vals(j);
                    ++count;
                }
            if (count == 0) throw NumericalError("precise eigenvalue refinement lost an eigenvalue");
            VectorP a = proj * vf.col(i);
            for (Eigen::Index j = 0; j < i; ++j)
                if (abs(nu(j) - mean / count) < cluster_tol) a -= aligned.col(j).dot(a) * aligned.col(j);
            aligned.col(i) = a / sqrt(a.dot(a));
            nu(i) = mean / count;
        }

        const Real tr = to_real(t_);
        iota_.resize(k, k);
        iota_inv_.resize(k, k);
        j_ = VectorP::Ones(k);
        for (Eigen::Index r = 0; r < k; ++r) {
            const Eigen::Index i = ref.order()[static_cast<std::size_t>(r)];
            const Real d = 1 + tr * nu(i), root = sqrt(abs(d));
            iota_.row(r) = root * aligned.col(i).transpose();
            iota_inv_.col(r) = aligned.col(i) / root;
            if (d < 0) j_(r) = -1;
        }
        const MatrixP m = to_real(gram_matrix(fam, t_));
        congruence_residual_ = max_abs(iota_.transpose() * j_.asDiagonal() * iota_ - m);
        alignment_residual_ = static_cast<double>((iota_.cast<double>() - ref.iota()).cwiseAbs().maxCoeff());
    }

    const MatrixP& iota() const { return iota_; }
    const MatrixP& iota_inv() const { return iota_inv_; }
    const VectorP& j_diag() const { return j_; }
    double congruence_residual() const { return congruence_residual_; }
    /// max |precise iota - double iota|.
    double alignment_residual() const { return alignment_residual_; }

    MatrixP conjugate(const RationalMatrix& a) const { return iota_ * to_real(a) * iota_inv_; }
    MatrixP group_inverse(const MatrixP& g) const { return j_.asDiagonal() * g.transpose() * j_.asDiagonal(); }
    double algebra_residual(const MatrixP& y) const {
        return max_abs(MatrixP(y.transpose() * j_.asDiagonal()) + MatrixP(j_.asDiagonal() * y));
    }

private:
    Rational t_;
    MatrixP iota_, iota_inv_;
    VectorP j_;
    double congruence_residual_ = 0.0, alignment_residual_ = 0.0;
};

/// rho._t and u_t in 50-digit arithmetic, built from the exact pieces of rep.
class PreciseCocycle {
public:
    explicit PreciseCocycle(const NormalizedRep& rep) : rep_(&rep), norm_(rep.family(), rep.normalizer()) {}

    const PreciseNormalizer& normalizer() const { return norm_; }
    MatrixP matrix(const Word& w) const { return norm_.conjugate(rep_->exact().represent(w)); }
    MatrixP cocycle(const Word& w) const { return norm_.conjugate(rep_->cocycle_exact(w)); }

    /// max |u(ab) - u(a) - Ad(rho.(a)) u(b)|.
    double identity_residual(const Word& a, const Word& b) const {
        const MatrixP g = matrix(a);
        return max_abs(cocycle(concat(a, b)) - cocycle(a) - g * cocycle(b) * norm_.group_inverse(g));
    }

    double algebra_residual(const Word& w) const { return norm_.algebra_residual(cocycle(w)); }

    /// max |double u(w) - precise u(w)| / max(1, |u(w)|).
    double float_agreement(const Word& w) const {
        const MatrixP u = cocycle(w);
        const double scale = std::max(1.0, max_abs(u));
        return max_abs(u - rep_->cocycle(w).cast<Real>()) / scale;
    }

private:
    const NormalizedRep* rep_;
    PreciseNormalizer norm_;
};

}  // namespace racg::precise
