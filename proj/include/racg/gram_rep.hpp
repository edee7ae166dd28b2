#pragma once

// The deformed Gram family M_t = Id + tN of a right-angled Coxeter graph and
// its reflection representations rho_t, exactly over Q, plus float mirrors
// used by the numerical layers.

#include "coxeter.hpp"
#include "dense_matrix.hpp"
#include "dual.hpp"
#include "errors.hpp"
#include "inertia.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace racg {

struct GramFamily {
    CoxeterGraph graph;
    RationalMatrix n;  // n(i,j) = 1 iff m_ij = infinity

    explicit GramFamily(CoxeterGraph g) : graph(std::move(g)), n(static_cast<std::size_t>(graph.k()), static_cast<std::size_t>(graph.k())) {
        for (int i = 0; i < graph.k(); ++i)
            for (int j = 0; j < graph.k(); ++j)
                if (graph.is_free(i, j)) n(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rational(1);
    }

    int k() const { return graph.k(); }
};

inline RationalMatrix gram_matrix(const GramFamily& fam, const Rational& t) {
    return RationalMatrix::identity(static_cast<std::size_t>(fam.k())) + t * fam.n;
}

/// <v, w>_t = v^T M w.
template <class T>
T form_pairing(const Matrix<T>& m, const std::vector<T>& v, const std::vector<T>& w) {
    return dot(v, m * w);
}

/// Id - 2 e_i (row i of M_t); i is 0-based.
inline RationalMatrix reflection_matrix(const GramFamily& fam, int i, const Rational& t) {
    const auto k = static_cast<std::size_t>(fam.k());
    if (i < 0 || i >= fam.k()) throw ConfigError("generator index out of range");
    const RationalMatrix m = gram_matrix(fam, t);
    RationalMatrix g = RationalMatrix::identity(k);
    const auto ii = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < k; ++j) g(ii, j) -= Rational(2) * m(ii, j);
    return g;
}

namespace detail {

// a <- a * (Id - 2 e_s r^T), i.e. a - 2 (a e_s) r^T.
inline void right_multiply_rank_one(RationalMatrix& a, std::size_t s, const std::vector<Rational>& r, RationalMatrix* accumulate = nullptr) {
    const std::size_t k = a.rows();
    const Rational two(2);
    for (std::size_t i = 0; i < k; ++i) {
        const Rational c = a(i, s);
        if (c.is_zero()) continue;
        const Rational f = two * c;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (!r[j].is_zero()) {
                if (accumulate) (*accumulate)(i, j) -= f * r[j];
                else a(i, j) -= f * r[j];
            }
    }
}

}  // namespace detail

/// Exact rho_t for a fixed non-exceptional t.
class DeformedRep {
public:
    DeformedRep(const GramFamily& fam, Rational t) : fam_(&fam), t_(std::move(t)), m_(gram_matrix(fam, t_)) {
        if (m_.det().is_zero()) throw ConfigError("t = " + t_.str() + " is an exceptional value (det M_t = 0)");
        const auto k = static_cast<std::size_t>(fam.k());
        for (std::size_t i = 0; i < k; ++i) {
            rows_.push_back(m_.row(i));
            nrows_.push_back(fam.n.row(i));
        }
    }

    const GramFamily& family() const { return *fam_; }
    const Rational& t() const { return t_; }
    const RationalMatrix& gram() const { return m_; }
    std::size_t dim() const { return m_.rows(); }

    RationalMatrix generator(int i) const { return reflection_matrix(*fam_, i, t_); }

    RationalMatrix represent(const Word& w) const {
        RationalMatrix a = RationalMatrix::identity(dim());
        for (int s : w) detail::right_multiply_rank_one(a, static_cast<std::size_t>(s), rows_[static_cast<std::size_t>(s)]);
        return a;
    }

    /// (rho_t(w), d/dtau rho_tau(w) at tau = t).
    Dual<RationalMatrix> represent_dual(const Word& w) const {
        RationalMatrix a = RationalMatrix::identity(dim());
        RationalMatrix da(dim(), dim());
        for (int s : w) {
            const auto ss = static_cast<std::size_t>(s);
            // (A, A') * (G, G') = (AG, A'G + AG') with G' = -2 e_s row_s(N).
            detail::right_multiply_rank_one(da, ss, rows_[ss]);
            detail::right_multiply_rank_one(a, ss, nrows_[ss], &da);
            detail::right_multiply_rank_one(a, ss, rows_[ss]);
        }
        return {std::move(a), std::move(da)};
    }

    /// rho_t(w) v computed letter by letter from the right.
    RationalVector apply(const Word& w, RationalVector v) const {
        for (auto it = w.rbegin(); it != w.rend(); ++it) reflect(*it, v);
        return v;
    }

    /// v <- v - 2 <v, e_i>_t e_i.
    void reflect(int i, RationalVector& v) const {
        const auto ii = static_cast<std::size_t>(i);
        const Rational p = dot(rows_[ii], v);
        v[ii] -= Rational(2) * p;
    }

    /// <v, e_i>_t = (M_t v)_i.
    Rational pairing_with_root(const RationalVector& v, int i) const { return dot(rows_[static_cast<std::size_t>(i)], v); }

    Rational pairing(const RationalVector& v, const RationalVector& w) const { return form_pairing(m_, v, w); }

private:
    const GramFamily* fam_;
    Rational t_;
    RationalMatrix m_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::vector<Rational>> nrows_;
};

inline RationalMatrix represent(const GramFamily& fam, const Word& w, const Rational& t) {
    RationalMatrix a = RationalMatrix::identity(static_cast<std::size_t>(fam.k()));
    const RationalMatrix m = gram_matrix(fam, t);
    for (int s : w) detail::right_multiply_rank_one(a, static_cast<std::size_t>(s), m.row(static_cast<std::size_t>(s)));
    return a;
}

inline Dual<RationalMatrix> represent_dual(const GramFamily& fam, const Word& w, const Rational& t) {
    const auto k = static_cast<std::size_t>(fam.k());
    const RationalMatrix m = gram_matrix(fam, t);
    Dual<RationalMatrix> acc(RationalMatrix::identity(k), RationalMatrix(k, k));
    for (int s : w) {
        const auto ss = static_cast<std::size_t>(s);
        RationalMatrix g = RationalMatrix::identity(k), dg(k, k);
        for (std::size_t j = 0; j < k; ++j) {
            g(ss, j) -= Rational(2) * m(ss, j);
            dg(ss, j) = Rational(-2) * fam.n(ss, j);
        }
        acc = acc * Dual<RationalMatrix>(std::move(g), std::move(dg));
    }
    return acc;
}

/// Double-precision copy of rho_t with generator derivatives, for the
/// numerical pipelines.
class FloatRep {
public:
    FloatRep(const GramFamily& fam, const Rational& t) : t_(t.to_double()) {
        const auto k = static_cast<Eigen::Index>(fam.k());
        m_ = to_eigen(gram_matrix(fam, t));
        n_ = to_eigen(fam.n);
        for (Eigen::Index i = 0; i < k; ++i) {
            Eigen::MatrixXd g = Eigen::MatrixXd::Identity(k, k);
            g.row(i) -= 2.0 * m_.row(i);
            Eigen::MatrixXd dg = Eigen::MatrixXd::Zero(k, k);
            dg.row(i) = -2.0 * n_.row(i);
            gens_.push_back(g);
            dgens_.push_back(dg);
        }
    }

    double t() const { return t_; }
    const Eigen::MatrixXd& gram() const { return m_; }
    const Eigen::MatrixXd& n() const { return n_; }
    Eigen::Index dim() const { return m_.rows(); }

    Eigen::MatrixXd represent(const Word& w) const {
        Eigen::MatrixXd a = Eigen::MatrixXd::Identity(dim(), dim());
        for (int s : w) a = a * gens_[static_cast<std::size_t>(s)];
        return a;
    }

    /// (rho_t(w), d/dtau rho_tau(w)).
    std::pair<Eigen::MatrixXd, Eigen::MatrixXd> represent_dual(const Word& w) const {
        Eigen::MatrixXd a = Eigen::MatrixXd::Identity(dim(), dim());
        Eigen::MatrixXd da = Eigen::MatrixXd::Zero(dim(), dim());
        for (int s : w) {
            const auto& g = gens_[static_cast<std::size_t>(s)];
            const auto& dg = dgens_[static_cast<std::size_t>(s)];
            da = da * g + a * dg;
            a = a * g;
        }
        return {a, da};
    }

    Eigen::VectorXd apply(const Word& w, Eigen::VectorXd v) const {
        for (auto it = w.rbegin(); it != w.rend(); ++it) reflect(*it, v);
        return v;
    }

    void reflect(int i, Eigen::VectorXd& v) const {
        const double p = m_.row(i).dot(v);
        v(i) -= 2.0 * p;
    }

    double pairing(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const { return v.dot(m_ * w); }

private:
    double t_;
    Eigen::MatrixXd m_, n_;
    std::vector<Eigen::MatrixXd> gens_, dgens_;
};

struct SignatureSegment {
    Rational lo;  // conservative bounds: isolating-interval endpoints or range ends
    Rational hi;
    bool unbounded_below = false;
    Inertia sig;
    Rational sample;

    /// Closed containment in the conservative bounds.
    bool contains(const Rational& t) const { return (unbounded_below || lo <= t) && t <= hi; }
};

struct SignatureProfile {
    Polynomial det_poly;
    std::vector<RootInterval> exceptional;
    std::vector<SignatureSegment> segments;
};

/// Root isolation of det(M_t) on [lo, hi] with one exact signature per
/// complementary segment, sampled at its midpoint.
inline SignatureProfile signature_profile(const GramFamily& fam, const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw ConfigError("profile range must satisfy lo < hi");
    SignatureProfile prof;
    prof.det_poly = det_polynomial(fam.n);
    for (const auto& iv : isolate_real_roots(prof.det_poly, lo, hi))
        prof.exceptional.push_back(refine_root(prof.det_poly, iv, Rational(1, 1 << 20)));
    Rational a = lo;
    auto add = [&](const Rational& x, const Rational& y) {
        if (!(x < y)) return;
        SignatureSegment seg;
        seg.lo = x;
        seg.hi = y;
        seg.sample = (x + y) / Rational(2);
        seg.sig = signature(gram_matrix(fam, seg.sample));
        prof.segments.push_back(seg);
    };
    for (const auto& iv : prof.exceptional) {
        add(a, iv.lo);
        a = iv.hi;
    }
    add(a, hi);
    return prof;
}

/// Cauchy bound: every real root of p has |root| < bound.
inline Rational root_bound(const Polynomial& p) {
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, abs(p.coeff(static_cast<std::size_t>(i)) / p.leading()));
    return Rational(1) + m;
}

/// The constant-signature segment of (-inf, -1] adjacent to -inf.
inline SignatureSegment leftmost_segment(const GramFamily& fam) {
    const Polynomial p = det_polynomial(fam.n);
    Rational lo = -(root_bound(p) + Rational(1));
    if (lo > Rational(-2)) lo = Rational(-2);
    SignatureProfile prof = signature_profile(fam, lo, Rational(-1));
    if (prof.segments.empty()) throw NumericalError("no constant-signature segment found left of -1");
    SignatureSegment seg = prof.segments.front();
    seg.unbounded_below = true;
    return seg;
}

/// Throws ConfigError naming the isolating interval when det(M_t) vanishes
/// somewhere between t and s (inclusive).
inline void require_same_segment(const GramFamily& fam, const Rational& t, const Rational& s) {
    const Rational a = std::min(t, s), b = std::max(t, s);
    const Polynomial p = det_polynomial(fam.n);
    if (p(a).is_zero()) throw ConfigError("t = " + a.str() + " is an exceptional value");
    if (p(b).is_zero()) throw ConfigError("t = " + b.str() + " is an exceptional value");
    if (a == b) return;
    const auto roots = isolate_real_roots(p, a, b);
    if (!roots.empty()) {
        const auto& iv = roots.front();
        throw ConfigError("parameters " + a.str() + " and " + b.str() + " are separated by an exceptional value in [" +
                          iv.lo.str() + ", " + iv.hi.str() + "] (~" + std::to_string(iv.midpoint()) + ")");
    }
}

struct PerronData {
    double lambda_pf = 0.0;
    Eigen::VectorXd v_pf;  // unit Euclidean norm, positive entries
    double residual = 0.0;
    int iterations = 0;
};

/// Power iteration on N + Id from the all-ones vector; the shift keeps
/// bipartite N (where -lambda_pf is also an eigenvalue) convergent.
inline PerronData perron(const GramFamily& fam, double tol = 1e-13, int max_iter = 100000) {
    if (!is_irreducible(fam.graph)) throw ConfigError("Perron data needs an irreducible graph");
    const Eigen::MatrixXd n = to_eigen(fam.n);
    const Eigen::Index k = n.rows();
    const Eigen::MatrixXd shifted = n + Eigen::MatrixXd::Identity(k, k);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(k).normalized();
    PerronData out;
    int it = 0;
    for (; it < max_iter; ++it) {
        Eigen::VectorXd y = (shifted * x).normalized();
        const double step = (y - x).norm();
        x = y;
        if (step < tol) break;
    }
    if (it == max_iter) throw NumericalError("Perron power iteration did not converge");
    out.iterations = it + 1;
    out.lambda_pf = x.dot(n * x);
    out.v_pf = x;
    out.residual = (n * x - out.lambda_pf * x).norm();
    if (x.minCoeff() <= 0.0) throw NumericalError("Perron vector has a nonpositive entry");
    if (k >= 3 && out.lambda_pf < std::sqrt(2.0) - out.residual)
        throw NumericalError("Perron eigenvalue below sqrt(2)");
    return out;
}

/// Columns of -M_t^{-1}; verifies <e'_i, e_j>_t = -delta_ij exactly.
inline std::vector<RationalVector> dual_vertices(const GramFamily& fam, const Rational& t) {
    const RationalMatrix m = gram_matrix(fam, t);
    if (m.det().is_zero()) throw ConfigError("t = " + t.str() + " is an exceptional value; M_t is singular");
    const RationalMatrix neg_inv = -m.inverse();
    const auto k = m.rows();
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(neg_inv.col(i));
    for (std::size_t i = 0; i < k; ++i) {
        const RationalVector me = m * out[i];
        for (std::size_t j = 0; j < k; ++j)
            if (me[j] != Rational(i == j ? -1 : 0)) throw NumericalError("dual vertex identity failed");
    }
    return out;
}

}  // namespace racg
