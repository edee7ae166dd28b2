#pragma once

// The normalization iota_t : (R^k, <.,.>_t) -> (R^{p,q+1}, J), the
// conjugated representation rho._t = iota rho_t iota^{-1}, its cocycle
// u_t = (d/dtau rho._tau) rho._t^{-1}, and the two actions built on them.
//
// iota_t = U diag(|1 + t nu_i|^{1/2}) V^T with N = V diag(nu) V^T computed
// once; U puts the directions with 1 + t nu_i > 0 first. Then
// iota^{-1} iota' = V diag(nu / 2(1 + t nu)) V^T = N M_t^{-1} / 2, which is
// rational, so the cocycle is iota E iota^{-1} with E exact.

#include "errors.hpp"
#include "gram_rep.hpp"
#include "hpq.hpp"
#include "inertia.hpp"
#include "jacobi_eigen.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace racg {

class Normalizer {
public:
    Normalizer(const GramFamily& fam, Rational t) : t_(std::move(t)) {
        const auto eig = symmetric_eigen(to_eigen(fam.n));
        const double td = t_.to_double();
        const Eigen::Index k = eig.values.size();
        std::vector<Eigen::Index> pos, neg;
        for (Eigen::Index i = 0; i < k; ++i) {
            const double d = 1.0 + td * eig.values(i);
            if (std::abs(d) < 1e-10)
                throw NumericalError("t = " + t_.str() + " too close to exceptional set (1 + t nu = " + std::to_string(d) + ")");
            (d > 0 ? pos : neg).push_back(i);
        }
        p_ = static_cast<int>(pos.size());
        neg_ = static_cast<int>(neg.size());
        const Inertia exact = signature(gram_matrix(fam, t_));
        if (exact.positive != p_ || exact.negative != neg_ || exact.zero != 0)
            throw NumericalError("normalizer signature disagrees with the exact inertia at t = " + t_.str());

        nu_ = eig.values;
        basis_ = eig.vectors;
        order_ = pos;
        order_.insert(order_.end(), neg.begin(), neg.end());
        iota_.resize(k, k);
        iota_inv_.resize(k, k);
        iota_dot_.resize(k, k);
        for (Eigen::Index r = 0; r < k; ++r) {
            const Eigen::Index i = order_[static_cast<std::size_t>(r)];
            const double nu = eig.values(i), d = 1.0 + td * nu, root = std::sqrt(std::abs(d));
            const Eigen::VectorXd v = eig.vectors.col(i);
            iota_.row(r) = root * v.transpose();
            iota_inv_.col(r) = v / root;
            iota_dot_.row(r) = (d > 0 ? 1.0 : -1.0) * nu / (2.0 * root) * v.transpose();
        }
        m_ = to_eigen(gram_matrix(fam, t_));
        half_n_minv_ = RationalMatrix(fam.n * gram_matrix(fam, t_).inverse()) * Rational(1, 2);
    }

    const Rational& t() const { return t_; }
    int p() const { return p_; }
    /// Number of negative directions, q + 1.
    int negative() const { return neg_; }
    StandardForm form() const {
        if (neg_ == 0) throw ConfigError("form is positive definite at t = " + t_.str() + "; no H^{p,q} model");
        return StandardForm(p_, neg_ - 1);
    }

    const Eigen::MatrixXd& iota() const { return iota_; }
    const Eigen::MatrixXd& iota_inv() const { return iota_inv_; }
    const Eigen::MatrixXd& iota_dot() const { return iota_dot_; }
    /// Eigenpairs of N (descending) and the row order of iota.
    const Eigen::VectorXd& nu() const { return nu_; }
    const Eigen::MatrixXd& basis() const { return basis_; }
    const std::vector<Eigen::Index>& order() const { return order_; }

    /// iota^{-1} iota' = N M_t^{-1} / 2, exact.
    const RationalMatrix& pullback_derivative() const { return half_n_minv_; }

    Eigen::MatrixXd j() const {
        Eigen::VectorXd d = Eigen::VectorXd::Ones(p_ + neg_);
        d.tail(neg_).setConstant(-1.0);
        return d.asDiagonal();
    }

    /// max |iota^T J iota - M_t|.
    double congruence_residual() const { return (iota_.transpose() * j() * iota_ - m_).cwiseAbs().maxCoeff(); }
    double inverse_residual() const {
        return (iota_ * iota_inv_ - Eigen::MatrixXd::Identity(iota_.rows(), iota_.cols())).cwiseAbs().maxCoeff();
    }

    /// Conjugate an exact matrix of R^k into the standard coordinates.
    Eigen::MatrixXd conjugate(const RationalMatrix& a) const { return iota_ * to_eigen(a) * iota_inv_; }
    Eigen::VectorXd push(const RationalVector& v) const { return iota_ * to_eigen(v); }
    Eigen::VectorXd push(const Eigen::VectorXd& v) const { return iota_ * v; }
    Eigen::VectorXd pull(const Eigen::VectorXd& x) const { return iota_inv_ * x; }

private:
    Rational t_;
    int p_ = 0, neg_ = 0;
    std::vector<Eigen::Index> order_;
    Eigen::VectorXd nu_;
    Eigen::MatrixXd basis_, iota_, iota_inv_, iota_dot_, m_;
    RationalMatrix half_n_minv_;
};

/// rho._t together with its exact pieces.
class NormalizedRep {
public:
    NormalizedRep(const GramFamily& fam, const Rational& t) : fam_(&fam), exact_(fam, t), norm_(fam, t), form_(norm_.form()) {}

    const GramFamily& family() const { return *fam_; }
    const Rational& t() const { return exact_.t(); }
    const DeformedRep& exact() const { return exact_; }
    const Normalizer& normalizer() const { return norm_; }
    const StandardForm& form() const { return form_; }

    /// rho._t(w) = iota rho_t(w) iota^{-1}.
    Eigen::MatrixXd matrix(const Word& w) const { return norm_.conjugate(exact_.represent(w)); }

    Eigen::MatrixXd inverse_matrix(const Word& w) const { return form_.group_inverse(matrix(w)); }

    /// d/dtau (iota_tau rho_tau(w) iota_tau^{-1}) at tau = t.
    Eigen::MatrixXd derivative(const Word& w) const {
        const auto rd = exact_.represent_dual(w);
        const RationalMatrix& b = norm_.pullback_derivative();
        return norm_.conjugate(b * rd.value + rd.deriv - rd.value * b);
    }

    /// Exact E(w) = B - rho B rho^{-1} + rho' rho^{-1} with B = N M_t^{-1} / 2;
    /// u(w) = iota E(w) iota^{-1}.
    RationalMatrix cocycle_exact(const Word& w) const {
        const auto rd = exact_.represent_dual(w);
        const RationalMatrix rinv = exact_.represent(inverse(w));
        const RationalMatrix& b = norm_.pullback_derivative();
        return b - rd.value * b * rinv + rd.deriv * rinv;
    }

    Eigen::MatrixXd cocycle(const Word& w) const { return norm_.conjugate(cocycle_exact(w)); }

private:
    const GramFamily* fam_;
    DeformedRep exact_;
    Normalizer norm_;
    StandardForm form_;
};

/// Ad(g) y = g y g^{-1} for g in O(p, q+1).
inline Eigen::MatrixXd adjoint(const StandardForm& f, const Eigen::MatrixXd& g, const Eigen::MatrixXd& y) {
    return g * y * f.group_inverse(g);
}

/// Cocycle values keyed by normal form; filled once, then read-only.
class CocycleTable {
public:
    CocycleTable(const NormalizedRep& rep, const std::vector<Word>& words) : rep_(&rep) {
        for (const auto& w : words) {
            Word nf = normal_form(rep.family().graph, w);
            if (table_.count(nf)) continue;
            const Eigen::MatrixXd u = rep.cocycle(nf);
            table_.emplace(std::move(nf), u);
        }
    }

    const Eigen::MatrixXd& at(const Word& w) const {
        const auto it = table_.find(normal_form(rep_->family().graph, w));
        if (it == table_.end()) throw ConfigError("word " + word_to_string(w) + " not in the cocycle table");
        return it->second;
    }

    std::size_t size() const { return table_.size(); }
    const std::map<Word, Eigen::MatrixXd>& entries() const { return table_; }

    /// max over entries of |u^T J + J u|.
    double algebra_residual() const {
        double r = 0.0;
        for (const auto& [w, u] : table_) r = std::max(r, rep_->form().algebra_residual(u));
        return r;
    }

private:
    const NormalizedRep* rep_;
    std::map<Word, Eigen::MatrixXd> table_;
};

/// w . y = Ad(rho.(w)) y + u(w).
inline Eigen::MatrixXd affine_act(const NormalizedRep& rep, const Word& w, const Eigen::MatrixXd& y) {
    return adjoint(rep.form(), rep.matrix(w), y) + rep.cocycle(w);
}

/// w . g = rho._s(w) g rho._t(w)^{-1}.
inline Eigen::MatrixXd right_left_act(const NormalizedRep& rep_t, const NormalizedRep& rep_s, const Word& w, const Eigen::MatrixXd& g) {
    if (!(rep_t.form() == rep_s.form()))
        throw ConfigError("t = " + rep_t.t().str() + " and s = " + rep_s.t().str() + " normalize to different signatures");
    return rep_s.matrix(w) * g * rep_t.inverse_matrix(w);
}

/// Signature of the Killing form of o(p, q+1).
inline std::pair<int, int> killing_form_signature(int p, int q) {
    if (p < 1 || q < 0) throw ConfigError("killing_form_signature needs p >= 1, q >= 0");
    return {p * (q + 1), (p * p + q * q - p + q) / 2};
}

/// Proportional to the Killing form (factor n - 2).
inline double trace_form(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a * b).trace(); }

}  // namespace racg
