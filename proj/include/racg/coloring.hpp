#pragma once

// Colored right-angled polytopes of H^p and their deformations in
// R^{p+m,1}: v_i^t = (cosh t w_i, sqrt(m) sinh t u_sigma(i), 1). Reflections
// in the v_i^t give rho_t; the diagonal map
//   D = (cosh t / cosh s) Id_p + (sinh t / sinh s) Id_m
// of the affine chart carries the chamber P_t onto P_s, and extending it by
// reflections gives a (rho_t, rho_s)-equivariant cosh t / cosh s-Lipschitz map.

#include "banach.hpp"
#include "coxeter.hpp"
#include "errors.hpp"
#include "hilbert.hpp"
#include "hpq.hpp"
#include "qsqrt5.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace racg {

/// Vertices of a regular simplex inscribed in the unit sphere of R^m;
/// m = 0 gives the single point of R^0.
inline std::vector<Eigen::VectorXd> simplex_directions(int m) {
    if (m < 0) throw ConfigError("simplex dimension must be nonnegative");
    if (m == 0) return {Eigen::VectorXd(0)};
    const Eigen::Index n = m + 1;
    // orthonormal basis of the hyperplane sum = 0 in R^{m+1}
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::Ones(n, 1));
    const Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd basis = q.rightCols(m);
    std::vector<Eigen::VectorXd> out;
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Unit(n, i) - Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
        out.push_back(basis.transpose() * e.normalized());
    }
    return out;
}

struct ColoredPolytope {
    std::string name;
    int p = 0;
    std::vector<Eigen::VectorXd> normals;      // (w_i, 1) in R^{p,1}
    std::vector<std::vector<bool>> adjacent;   // faces intersect
    std::vector<int> coloring;                 // values 0..m

    int k() const { return static_cast<int>(normals.size()); }
    int m() const { return coloring.empty() ? 0 : *std::max_element(coloring.begin(), coloring.end()); }
    StandardForm form() const { return StandardForm(p, 0); }
    std::size_t edge_count() const {
        std::size_t e = 0;
        for (int i = 0; i < k(); ++i)
            for (int j = i + 1; j < k(); ++j) e += adjacent[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return e;
    }

    /// Right angles on adjacent pairs, spacelike normals, proper coloring.
    void validate(double tol = 1e-10) const {
        const auto n = normals.size();
        if (p < 1) throw ConfigError("polytope dimension must be >= 1");
        if (n == 0) throw ConfigError("polytope has no faces");
        if (adjacent.size() != n || coloring.size() != n) throw ConfigError("adjacency and coloring must have one entry per face");
        const StandardForm f = form();
        for (std::size_t i = 0; i < n; ++i) {
            if (normals[i].size() != p + 1) throw ConfigError("normal " + std::to_string(i) + " has the wrong dimension");
            if (std::abs(normals[i](p) - 1.0) > tol) throw ConfigError("normal " + std::to_string(i) + " is not of the form (w, 1)");
            if (!(f.norm2(normals[i]) > tol)) throw ConfigError("normal " + std::to_string(i) + " is not spacelike");
            if (adjacent[i].size() != n) throw ConfigError("adjacency table is not square");
            if (coloring[i] < 0) throw ConfigError("negative color on face " + std::to_string(i));
            if (adjacent[i][i]) throw ConfigError("face " + std::to_string(i) + " marked adjacent to itself");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (adjacent[i][j] != adjacent[j][i]) throw ConfigError("adjacency table is not symmetric");
                if (!adjacent[i][j]) continue;
                const double c = f.pair(normals[i], normals[j]);
                if (std::abs(c) > tol)
                    throw ConfigError("faces " + std::to_string(i) + " and " + std::to_string(j) + " are adjacent but not orthogonal (" +
                                      std::to_string(c) + ")");
                if (coloring[i] == coloring[j])
                    throw ConfigError("coloring gives adjacent faces " + std::to_string(i) + " and " + std::to_string(j) + " the same color " +
                                      std::to_string(coloring[i]));
            }
    }
};

/// r(x) = x - 2 <x, v> / <v, v> v.
template <class S = double>
MatrixX<S> reflection_in_normal(const Eigen::VectorXd& v, const StandardForm& f) {
    const double n2 = f.norm2(v);
    if (!(n2 > 1e-14 * v.squaredNorm())) throw DomainError("reflection needs a spacelike normal (<v, v> = " + std::to_string(n2) + ")");
    const VectorX<S> vs = v.cast<S>(), jv = f.j_diag().cast<S>().cwiseProduct(vs);
    return MatrixX<S>::Identity(v.size(), v.size()) - (S(2) / form_pair(f, vs, vs)) * vs * jv.transpose();
}

template <class S>
void reflect_point(VectorX<S>& x, const Eigen::VectorXd& v, const StandardForm& f) {
    const VectorX<S> vs = v.cast<S>();
    x -= (S(2) * form_pair(f, x, vs) / form_pair(f, vs, vs)) * vs;
}

struct DeformedNormals {
    double t = 0.0;
    int p = 0, m = 0;
    std::vector<Eigen::VectorXd> vectors;      // v_i^t in R^{p+m,1}
    std::vector<Eigen::VectorXd> derivatives;  // d/dt v_i^t

    StandardForm form() const { return StandardForm(p + m, 0); }
};

inline DeformedNormals deformed_normals(const ColoredPolytope& poly, double t) {
    poly.validate();
    const int p = poly.p, m = poly.m();
    const auto u = simplex_directions(m);
    const double sm = std::sqrt(static_cast<double>(m));
    DeformedNormals out;
    out.t = t;
    out.p = p;
    out.m = m;
    for (int i = 0; i < poly.k(); ++i) {
        const auto& v = poly.normals[static_cast<std::size_t>(i)];
        const auto& ui = u[static_cast<std::size_t>(poly.coloring[static_cast<std::size_t>(i)])];
        Eigen::VectorXd vt(p + m + 1), dv(p + m + 1);
        vt << std::cosh(t) * v.head(p), sm * std::sinh(t) * ui, 1.0;
        dv << std::sinh(t) * v.head(p), sm * std::cosh(t) * ui, 0.0;
        out.vectors.push_back(vt);
        out.derivatives.push_back(dv);
    }
    return out;
}

/// <v_i^t, v_i^t> = (1 + m) sinh^2 t + <v_i, v_i> cosh^2 t.
inline double expected_deformed_norm(const ColoredPolytope& poly, int i, double t) {
    const double sh = std::sinh(t), ch = std::cosh(t);
    return (1 + poly.m()) * sh * sh + poly.form().norm2(poly.normals[static_cast<std::size_t>(i)]) * ch * ch;
}

/// max |<v_i^t, v_j^t>| over adjacent pairs.
inline double orthogonality_residual(const ColoredPolytope& poly, const DeformedNormals& dn) {
    const StandardForm f = dn.form();
    double r = 0.0;
    for (std::size_t i = 0; i < dn.vectors.size(); ++i)
        for (std::size_t j = i + 1; j < dn.vectors.size(); ++j)
            if (poly.adjacent[i][j]) r = std::max(r, std::abs(f.pair(dn.vectors[i], dn.vectors[j])));
    return r;
}

/// Non-adjacent deformed walls stay ultraparallel: |<v_i,v_j>| > |v_i| |v_j|.
inline bool nonadjacent_walls_disjoint(const ColoredPolytope& poly, const DeformedNormals& dn) {
    const StandardForm f = dn.form();
    for (std::size_t i = 0; i < dn.vectors.size(); ++i)
        for (std::size_t j = i + 1; j < dn.vectors.size(); ++j) {
            if (poly.adjacent[i][j]) continue;
            const double c = f.pair(dn.vectors[i], dn.vectors[j]);
            if (!(c * c > f.norm2(dn.vectors[i]) * f.norm2(dn.vectors[j]) * (1 + 1e-12))) return false;
        }
    return true;
}

/// rho_t(w) as a product of reflections, the normals taken as exact data.
template <class S = double>
MatrixX<S> rep_from_normals(const DeformedNormals& dn, const Word& w) {
    const StandardForm f = dn.form();
    MatrixX<S> g = MatrixX<S>::Identity(f.dim(), f.dim());
    for (int s : w) {
        if (s < 0 || s >= static_cast<int>(dn.vectors.size())) throw ConfigError("letter " + std::to_string(s) + " out of range");
        g = g * reflection_in_normal<S>(dn.vectors[static_cast<std::size_t>(s)], f);
    }
    return g;
}

/// u_t(w) = (d/dt rho_t(w)) rho_t(w)^{-1}, in o(p+m, 1).
inline Eigen::MatrixXd coloring_cocycle(const DeformedNormals& dn, const Word& w) {
    const StandardForm f = dn.form();
    const Eigen::Index n = f.dim();
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n), dg = Eigen::MatrixXd::Zero(n, n);
    for (int s : w) {
        const auto& v = dn.vectors[static_cast<std::size_t>(s)];
        const auto& dv = dn.derivatives[static_cast<std::size_t>(s)];
        const double n2 = f.norm2(v), dn2 = 2.0 * f.pair(v, dv);
        const Eigen::VectorXd jv = f.j_diag().cwiseProduct(v), jdv = f.j_diag().cwiseProduct(dv);
        const Eigen::MatrixXd r = reflection_in_normal(v, f);
        const Eigen::MatrixXd dr = -(2.0 / n2) * (dv * jv.transpose() + v * jdv.transpose()) + (2.0 * dn2 / (n2 * n2)) * v * jv.transpose();
        dg = dg * r + g * dr;
        g = g * r;
    }
    return dg * f.group_inverse(g);
}

/// The (rho_t, rho_s)-equivariant map on H^{p+m}: fold into P_t, apply D,
/// unfold with rho_s.
class LipschitzMap {
public:
    LipschitzMap(const ColoredPolytope& poly, double t, double s, int budget = 100000)
        : t_(t), s_(s), budget_(budget), src_(deformed_normals(poly, t)), dst_(deformed_normals(poly, s)) {
        if (!(t > 0 && t <= s)) throw ConfigError("lipschitz map needs 0 < t <= s");
        const int p = poly.p, m = poly.m();
        d_ = Eigen::VectorXd::Ones(p + m + 1);
        d_.head(p).setConstant(std::cosh(t) / std::cosh(s));
        d_.segment(p, m).setConstant(std::sinh(t) / std::sinh(s));
    }

    double t() const { return t_; }
    double s() const { return s_; }
    double constant() const { return std::cosh(t_) / std::cosh(s_); }
    const DeformedNormals& source() const { return src_; }
    const DeformedNormals& target() const { return dst_; }
    StandardForm form() const { return src_.form(); }
    const Eigen::VectorXd& diagonal() const { return d_; }

    template <class S>
    struct BasicFolded {
        Word word;  // x = rho_t(word) x_reduced
        VectorX<S> reduced;
    };
    using Folded = BasicFolded<double>;

    /// Greedy: reflect in the most violated wall of P_t until none is.
    template <class S = double>
    BasicFolded<S> fold(const VectorX<S>& x) const {
        using std::sqrt;
        const StandardForm f = form();
        BasicFolded<S> out;
        out.reduced = upper_lift<S>(f, x);
        for (int step = 0;; ++step) {
            int worst = -1;
            S worst_val(1e-12);
            for (std::size_t i = 0; i < src_.vectors.size(); ++i) {
                const VectorX<S> v = src_.vectors[i].cast<S>();
                const S val = form_pair(f, out.reduced, v) / sqrt(form_pair(f, v, v));
                if (val > worst_val) {
                    worst_val = val;
                    worst = static_cast<int>(i);
                }
            }
            if (worst < 0) break;
            if (step >= budget_) throw ReductionError("point not folded into P_t within " + std::to_string(budget_) + " reflections");
            reflect_point(out.reduced, src_.vectors[static_cast<std::size_t>(worst)], f);
            out.reduced = upper_lift<S>(f, out.reduced);
            out.word.push_back(worst);
        }
        return out;
    }

    template <class S>
    VectorX<S> apply(const VectorX<S>& x) const {
        const StandardForm f = form();
        const BasicFolded<S> fd = fold<S>(x);
        VectorX<S> y = d_.cast<S>().cwiseProduct(fd.reduced);
        for (auto it = fd.word.rbegin(); it != fd.word.rend(); ++it) reflect_point(y, dst_.vectors[static_cast<std::size_t>(*it)], f);
        return upper_lift<S>(f, y);
    }

    Eigen::VectorXd operator()(const Eigen::VectorXd& x) const { return apply<double>(x); }

private:
    double t_, s_;
    int budget_;
    DeformedNormals src_, dst_;
    Eigen::VectorXd d_;
};

/// Regular right-angled k-gon in H^2 with sides colored by parity:
/// w_i = r (cos 2 pi i / k, sin 2 pi i / k) with r^2 cos(2 pi / k) = 1.
inline ColoredPolytope build_kgon(int k) {
    if (k % 2 != 0) throw ConfigError("sides of a " + std::to_string(k) + "-gon form an odd cycle, which has no proper 2-coloring");
    if (k < 6) throw ConfigError("no right-angled " + std::to_string(k) + "-gon in H^2 (need k >= 5)");
    const double r = 1.0 / std::sqrt(std::cos(2 * std::numbers::pi / k));
    ColoredPolytope poly;
    poly.name = std::to_string(k) + "-gon";
    poly.p = 2;
    poly.adjacent.assign(static_cast<std::size_t>(k), std::vector<bool>(static_cast<std::size_t>(k), false));
    for (int i = 0; i < k; ++i) {
        const double th = 2 * std::numbers::pi * i / k;
        Eigen::VectorXd v(3);
        v << r * std::cos(th), r * std::sin(th), 1.0;
        poly.normals.push_back(v);
        poly.coloring.push_back(i % 2);
        const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>((i + 1) % k);
        poly.adjacent[a][b] = poly.adjacent[b][a] = true;
    }
    poly.validate();
    return poly;
}

/// k >= 2 pairwise disjoint walls in H^2, all one color (m = 0). Default r
/// sits mid-range in (1, 1 / cos(pi / k)).
inline ColoredPolytope build_disjoint_walls(int k, double r = 0.0) {
    if (k < 2) throw ConfigError("need at least 2 walls");
    if (r == 0.0) r = k == 2 ? 1.5 : std::sqrt(0.5 * (1.0 + 1.0 / std::pow(std::cos(std::numbers::pi / k), 2)));
    if (!(r > 1)) throw ConfigError("wall radius must exceed 1 for spacelike normals");
    ColoredPolytope poly;
    poly.name = std::to_string(k) + " disjoint walls";
    poly.p = 2;
    poly.adjacent.assign(static_cast<std::size_t>(k), std::vector<bool>(static_cast<std::size_t>(k), false));
    for (int i = 0; i < k; ++i) {
        const double th = 2 * std::numbers::pi * i / k;
        Eigen::VectorXd v(3);
        v << r * std::cos(th), r * std::sin(th), 1.0;
        poly.normals.push_back(v);
        poly.coloring.push_back(0);
    }
    poly.validate();
    const StandardForm f = poly.form();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const auto& a = poly.normals[static_cast<std::size_t>(i)];
            const auto& b = poly.normals[static_cast<std::size_t>(j)];
            const double c = f.pair(a, b);
            if (!(c * c > f.norm2(a) * f.norm2(b) * (1 + 1e-12)))
                throw ConfigError("walls " + std::to_string(i) + " and " + std::to_string(j) + " are not disjoint");
        }
    return poly;
}

// ---------------------------------------------------------------- 120-cell

struct Cell120 {
    std::vector<Quaternion> quaternions;  // unit icosians, sorted
    std::vector<std::vector<int>> neighbors;
    ColoredPolytope polytope;             // coloring left at 0 until five_color_120cell
};

namespace detail {

inline std::vector<std::array<int, 4>> even_permutations() {
    std::vector<std::array<int, 4>> out;
    std::array<int, 4> a{0, 1, 2, 3};
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) inv += a[static_cast<std::size_t>(i)] > a[static_cast<std::size_t>(j)];
        if (inv % 2 == 0) out.push_back(a);
    } while (std::next_permutation(a.begin(), a.end()));
    return out;
}

/// All sign changes and even permutations of a quaternion's coordinates.
inline void add_orbit(std::set<Quaternion>& out, const std::array<QSqrt5, 4>& base) {
    for (const auto& perm : even_permutations())
        for (int signs = 0; signs < 16; ++signs) {
            Quaternion q;
            for (int i = 0; i < 4; ++i) {
                QSqrt5 c = base[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
                if (signs & (1 << i)) c = -c;
                q.c[static_cast<std::size_t>(i)] = c;
            }
            out.insert(q);
        }
}

}  // namespace detail

/// The 120 unit icosians, neighbors at inner product phi / 2, and facet
/// normals (r w_i, 1) with r^2 = 2 / phi so neighbors meet at right angles.
inline Cell120 build_120cell() {
    const QSqrt5 half(Rational(1, 2)), zero, one(1);
    const QSqrt5 phi = QSqrt5::phi(), phinv = QSqrt5::phi_inverse();
    std::set<Quaternion> all;
    detail::add_orbit(all, {zero, zero, zero, one});
    detail::add_orbit(all, {half, half, half, half});
    detail::add_orbit(all, {zero, phinv * half, half, phi * half});
    Cell120 cell;
    cell.quaternions.assign(all.begin(), all.end());
    const std::size_t n = cell.quaternions.size();
    for (const auto& q : cell.quaternions)
        if (dot(q, q) != one) throw NumericalError("icosian of non-unit norm");
    const QSqrt5 target = phi * half;
    cell.neighbors.resize(n);
    auto& poly = cell.polytope;
    poly.name = "120-cell";
    poly.p = 4;
    poly.adjacent.assign(n, std::vector<bool>(n, false));
    poly.coloring.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dot(cell.quaternions[i], cell.quaternions[j]) == target) {
                cell.neighbors[i].push_back(static_cast<int>(j));
                cell.neighbors[j].push_back(static_cast<int>(i));
                poly.adjacent[i][j] = poly.adjacent[j][i] = true;
            }
    const double r = std::sqrt(2.0 / phi.to_double());
    for (const auto& q : cell.quaternions) {
        Eigen::VectorXd v(5);
        for (int c = 0; c < 4; ++c) v(c) = r * q.c[static_cast<std::size_t>(c)].to_double();
        v(4) = 1.0;
        poly.normals.push_back(v);
    }
    return cell;
}

struct FiveColoring {
    std::vector<int> colors;
    std::vector<std::array<int, 5>> permutations;  // of the 5 axis triples, per icosian
    std::array<int, 5> class_sizes{};
    bool proper = false;
    int neighbor_pairs = 0;
    int neighbor_trace_failures = 0;   // trace psi(w_i^-1 w_j) != phi
    int neighbor_cycle_failures = 0;   // psi(w_i^-1 w_j) not a 5-cycle
};

namespace detail {

using Axis = std::array<QSqrt5, 3>;

inline Axis sign_normalized(Axis a) {
    for (const auto& c : a) {
        if (c.is_zero()) continue;
        if (c.sign() < 0)
            for (auto& x : a) x = -x;
        break;
    }
    return a;
}

inline QSqrt5 dot3(const Axis& a, const Axis& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Axis rotate(const Quaternion& q, const Axis& a) {
    const Quaternion v{{QSqrt5(), a[0], a[1], a[2]}};
    const Quaternion r = q * v * q.conjugate();
    return {r.c[1], r.c[2], r.c[3]};
}

inline bool is_even(const std::array<int, 5>& p) {
    int inv = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) inv += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
    return inv % 2 == 0;
}

inline bool is_five_cycle(const std::array<int, 5>& p) {
    int x = 0;
    for (int step = 1; step <= 5; ++step) {
        x = p[static_cast<std::size_t>(x)];
        if (x == 0) return step == 5;
    }
    return false;
}

}  // namespace detail

/// sigma(i) = image of triple 0 under the permutation of the 5 orthogonal
/// triples of 2-fold axes induced by the rotation psi(w_i).
inline FiveColoring five_color_120cell(Cell120& cell) {
    using detail::Axis;
    std::set<Axis> axis_set;
    for (const auto& q : cell.quaternions)
        if (q.c[0].is_zero()) axis_set.insert(detail::sign_normalized({q.c[1], q.c[2], q.c[3]}));
    const std::vector<Axis> axes(axis_set.begin(), axis_set.end());
    if (axes.size() != 15) throw NumericalError("expected 15 two-fold axes, found " + std::to_string(axes.size()));
    std::set<std::array<Axis, 3>> triple_set;
    for (const auto& a : axes) {
        std::vector<Axis> t{a};
        for (const auto& b : axes)
            if (detail::dot3(a, b).is_zero()) t.push_back(b);
        if (t.size() != 3) throw NumericalError("axis without exactly two orthogonal partners");
        std::sort(t.begin(), t.end());
        triple_set.insert({t[0], t[1], t[2]});
    }
    const std::vector<std::array<Axis, 3>> triples(triple_set.begin(), triple_set.end());
    if (triples.size() != 5) throw NumericalError("expected 5 orthogonal triples, found " + std::to_string(triples.size()));
    std::map<Axis, int> triple_of;
    for (int i = 0; i < 5; ++i)
        for (const auto& a : triples[static_cast<std::size_t>(i)]) triple_of[a] = i;

    auto permutation = [&](const Quaternion& q) {
        std::array<int, 5> p{};
        for (int i = 0; i < 5; ++i) {
            int image = -1;
            for (const auto& a : triples[static_cast<std::size_t>(i)]) {
                const auto it = triple_of.find(detail::sign_normalized(detail::rotate(q, a)));
                if (it == triple_of.end() || (image >= 0 && it->second != image))
                    throw NumericalError("rotation does not permute the axis triples");
                image = it->second;
            }
            p[static_cast<std::size_t>(i)] = image;
        }
        if (!detail::is_even(p)) throw NumericalError("triple permutation is not in A5");
        return p;
    };

    FiveColoring out;
    for (const auto& q : cell.quaternions) {
        out.permutations.push_back(permutation(q));
        out.colors.push_back(out.permutations.back()[0]);
        ++out.class_sizes[static_cast<std::size_t>(out.colors.back())];
    }
    const QSqrt5 phi = QSqrt5::phi();
    out.proper = true;
    for (std::size_t i = 0; i < cell.quaternions.size(); ++i)
        for (int j : cell.neighbors[i]) {
            if (static_cast<std::size_t>(j) < i) continue;
            ++out.neighbor_pairs;
            if (out.colors[i] == out.colors[static_cast<std::size_t>(j)]) out.proper = false;
            const Quaternion rel = cell.quaternions[i].conjugate() * cell.quaternions[static_cast<std::size_t>(j)];
            // trace of the rotation of a unit quaternion: 3 a^2 - b^2 - c^2 - d^2
            const QSqrt5 tr = QSqrt5(3) * rel.c[0] * rel.c[0] - rel.c[1] * rel.c[1] - rel.c[2] * rel.c[2] - rel.c[3] * rel.c[3];
            if (tr != phi) ++out.neighbor_trace_failures;
            if (!detail::is_five_cycle(permutation(rel))) ++out.neighbor_cycle_failures;
        }
    cell.polytope.coloring = out.colors;
    return out;
}

// ------------------------------------------------------------ experiments

namespace detail {

inline Eigen::VectorXd random_point(std::mt19937_64& rng, const StandardForm& f, double max_radius) {
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ur(0.0, max_radius);
    Eigen::VectorXd u(f.p());
    for (auto& x : u) x = nd(rng);
    u.normalize();
    const double r = ur(rng);
    Eigen::VectorXd x(f.dim());
    x << std::sinh(r) * u, std::cosh(r);
    return x;
}

/// exp_x of a random tangent vector of length len.
inline Eigen::VectorXd random_neighbor(std::mt19937_64& rng, const StandardForm& f, const Eigen::VectorXd& x, double len) {
    std::normal_distribution<double> nd;
    Eigen::VectorXd v(f.dim());
    for (auto& c : v) c = nd(rng);
    v = tangent_projection(f, x, v);
    v /= std::sqrt(f.norm2(v));
    return upper_lift(f, std::cosh(len) * x + std::sinh(len) * v);
}

inline Eigen::MatrixXd random_isometry(std::mt19937_64& rng, const StandardForm& f, double scale) {
    std::normal_distribution<double> nd(0.0, scale);
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(f.dim(), f.dim());
    const auto basis = algebra_basis(f);
    for (const auto& b : basis) y += nd(rng) * b;
    return matrix_exp(y);
}

inline Word random_word(std::mt19937_64& rng, int k, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len), letter(0, k - 1);
    Word w(static_cast<std::size_t>(len(rng)));
    for (auto& x : w) x = letter(rng);
    return w;
}

}  // namespace detail

struct LipschitzSample {
    int pairs = 0;
    double bound = 0.0;
    double max_ratio = 0.0;
    double min_distance = 0.0;  // pairs closer than this are skipped
};

/// d(f x, f y) / d(x, y) on random pairs: half independent (across
/// chambers), half at distance in (0.01, 1).
inline LipschitzSample lipschitz_ratio_sample(const LipschitzMap& f, int pairs, std::uint64_t seed, double max_radius = 3.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> len(0.01, 1.0);
    const StandardForm form = f.form();
    LipschitzSample out;
    out.bound = f.constant();
    out.min_distance = 1e-4;
    for (int i = 0; i < pairs; ++i) {
        const Eigen::VectorXd x = detail::random_point(rng, form, max_radius);
        const Eigen::VectorXd y = i % 2 == 0 ? detail::random_point(rng, form, max_radius) : detail::random_neighbor(rng, form, x, len(rng));
        const double d = hyperbolic_distance(form, x, y);
        if (d < out.min_distance) continue;
        ++out.pairs;
        out.max_ratio = std::max(out.max_ratio, hyperbolic_distance(form, f(x), f(y)) / d);
    }
    return out;
}

/// max over samples of d(f(rho_t(g) x), rho_s(g) f(x)), evaluated in long
/// double so that the residual measures the map and not the rounding.
inline double lipschitz_equivariance_residual(const LipschitzMap& f, int samples, std::uint64_t seed, int max_len = 3) {
    using L = long double;
    std::mt19937_64 rng(seed);
    const StandardForm form = f.form();
    const int k = static_cast<int>(f.source().vectors.size());
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const VectorX<L> x = detail::random_point(rng, form, 1.5).cast<L>();
        const Word g = detail::random_word(rng, k, max_len);
        const VectorX<L> lhs = f.apply<L>(rep_from_normals<L>(f.source(), g) * x);
        const VectorX<L> rhs = upper_lift<L>(form, rep_from_normals<L>(f.target(), g) * f.apply<L>(x));
        worst = std::max(worst, static_cast<double>(hyperbolic_distance<L>(form, lhs, rhs)));
    }
    return worst;
}

struct BallComparisonReport {
    int checks = 0;
    int violations = 0;
    double min_slack = 0.0;  // min of d_{B_r} - d_{B_1} / r
};

/// d_{B_r}(x, y) >= d_{B_1}(x, y) / r for x, y in B_r, r in (0, 1).
inline BallComparisonReport ball_comparison_check(int dim, const std::vector<double>& radii, int pairs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    auto in_ball = [&](double r) {
        Eigen::VectorXd v(dim);
        for (auto& c : v) c = nd(rng);
        return Eigen::VectorXd(v.normalized() * r * std::pow(ur(rng), 1.0 / dim) * (1 - 1e-9));
    };
    BallComparisonReport out;
    out.min_slack = std::numeric_limits<double>::infinity();
    for (double r : radii) {
        if (!(r > 0 && r < 1)) throw ConfigError("ball comparison radius must lie in (0, 1)");
        for (int i = 0; i < pairs; ++i) {
            const Eigen::VectorXd x = in_ball(r), y = in_ball(r);
            const double dr = hilbert_distance_ball(x, y, r), d1 = hilbert_distance_ball(x, y, 1.0);
            ++out.checks;
            const double slack = dr - d1 / r;
            out.min_slack = std::min(out.min_slack, slack);
            if (slack < -1e-12 * std::max(1.0, dr)) ++out.violations;
        }
    }
    return out;
}

struct BanachEquivarianceReport {
    int samples = 0;
    double constant = 0.0;
    double max_residual = 0.0;   // d(Pi(g'), rho_t(gamma) Pi(g))
    int max_iterations = 0;
    int bound_violations = 0;    // iterations > a priori bound
};

/// Pi(rho_s(gamma) g rho_t(gamma)^{-1}) against rho_t(gamma) Pi(g). The
/// iteration for g' runs near points at distance R where one step costs
/// about eps e^{3R} in double (and still ~1e-8 in long double for the
/// 120-cell), so it is done in 50 digits.
inline BanachEquivarianceReport banach_equivariance_check(const LipschitzMap& f, int samples, std::uint64_t seed, double tol = 1e-9) {
    using L = boost::multiprecision::cpp_bin_float_50;
    std::mt19937_64 rng(seed);
    const StandardForm form = f.form();
    const int k = static_cast<int>(f.source().vectors.size());
    const std::function<VectorX<L>(const VectorX<L>&)> map = [&](const VectorX<L>& x) { return f.apply<L>(x); };
    const VectorX<L> origin = VectorX<L>::Unit(form.dim(), form.dim() - 1);
    BanachEquivarianceReport out;
    out.samples = samples;
    out.constant = f.constant();
    for (int i = 0; i < samples; ++i) {
        const MatrixX<L> g = detail::random_isometry(rng, form, 0.3).cast<L>();
        const Word gamma = detail::random_word(rng, k, 3);
        const MatrixX<L> rt = rep_from_normals<L>(f.source(), gamma), rs = rep_from_normals<L>(f.target(), gamma);
        const MatrixX<L> g2 = rs * g * group_inverse(form, rt);
        const auto a = banach_projection<L>(form, map, f.constant(), g, origin, tol);
        const auto b = banach_projection<L>(form, map, f.constant(), g2, origin, tol);
        for (const auto* r : {&a, &b}) {
            out.max_iterations = std::max(out.max_iterations, r->iterations);
            if (r->iterations > r->bound) ++out.bound_violations;
        }
        const VectorX<L> moved = upper_lift<L>(form, rt * a.point);
        out.max_residual = std::max(out.max_residual, static_cast<double>(hyperbolic_distance<L>(form, b.point, moved)));
    }
    return out;
}

struct ColoringReport {
    std::string name;
    int k = 0, p = 0, m = 0;
    double t = 0.0, s = 0.0;
    std::size_t edges = 0;
    double orthogonality_residual = 0.0;  // over t and s
    double norm_residual = 0.0;           // against expected_deformed_norm
    double involution_residual = 0.0;     // |r^2 - Id|
    double commutation_residual = 0.0;    // adjacent generators
    bool walls_disjoint = false;          // non-adjacent deformed walls, at t and s
    LipschitzSample lipschitz;
    double equivariance_residual = 0.0;
    double cocycle_algebra_residual = 0.0;
    double cocycle_derivative = 0.0;      // d/ds cosh t / cosh s at s = t, i.e. -tanh t
    bool verdict = false;
};

inline ColoringReport run_coloring_pipeline(const ColoredPolytope& poly, double t, double s, int pairs, std::uint64_t seed) {
    ColoringReport rep;
    rep.name = poly.name;
    rep.k = poly.k();
    rep.p = poly.p;
    rep.m = poly.m();
    rep.t = t;
    rep.s = s;
    rep.edges = poly.edge_count();
    const LipschitzMap f(poly, t, s);
    const StandardForm form = f.form();
    const Eigen::Index n = form.dim();
    for (const auto* dn : {&f.source(), &f.target()}) {
        rep.orthogonality_residual = std::max(rep.orthogonality_residual, orthogonality_residual(poly, *dn));
        for (int i = 0; i < poly.k(); ++i) {
            const auto& v = dn->vectors[static_cast<std::size_t>(i)];
            rep.norm_residual = std::max(rep.norm_residual, std::abs(form.norm2(v) - expected_deformed_norm(poly, i, dn->t)));
            const Eigen::MatrixXd r = reflection_in_normal(v, form);
            rep.involution_residual = std::max(rep.involution_residual, (r * r - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
            for (int j = i + 1; j < poly.k(); ++j)
                if (poly.adjacent[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                    const Eigen::MatrixXd q = reflection_in_normal(dn->vectors[static_cast<std::size_t>(j)], form);
                    rep.commutation_residual = std::max(rep.commutation_residual, (r * q - q * r).cwiseAbs().maxCoeff());
                }
        }
    }
    rep.walls_disjoint = nonadjacent_walls_disjoint(poly, f.source()) && nonadjacent_walls_disjoint(poly, f.target());
    rep.lipschitz = lipschitz_ratio_sample(f, pairs, seed);
    rep.equivariance_residual = lipschitz_equivariance_residual(f, 200, seed + 1);
    std::mt19937_64 rng(seed + 2);
    for (int i = 0; i < 50; ++i) {
        const Eigen::MatrixXd u = coloring_cocycle(f.source(), detail::random_word(rng, poly.k(), 5));
        rep.cocycle_algebra_residual = std::max(rep.cocycle_algebra_residual, form.algebra_residual(u) / std::max(1.0, u.cwiseAbs().maxCoeff()));
    }
    rep.cocycle_derivative = -std::tanh(t);
    rep.verdict = rep.orthogonality_residual < 1e-12 && rep.walls_disjoint && rep.lipschitz.max_ratio <= rep.lipschitz.bound + 1e-6 &&
                  rep.equivariance_residual < 1e-9 && rep.cocycle_algebra_residual < 1e-9;
    return rep;
}

}  // namespace racg
