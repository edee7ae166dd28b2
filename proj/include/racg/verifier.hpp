#pragma once

// Contraction experiments on orbits of rho._t: the equivariant maps
// f_{t,s} = iota_s Phi_{t,s} iota_t^{-1}, the vector fields Z_t = d/ds f_{t,s},
// their coarse spacelike Lipschitz constants, and the probes around them.
//
// Orbit points are kept exactly as v = rho_t(w) v0 in R^k; iota is an
// isometry onto the standard form, so pseudo-distances are read off exact
// pairings <v, w>_t and only the final arccosh is in floating point.

#include "coxeter.hpp"
#include "errors.hpp"
#include "gauges.hpp"
#include "gram_rep.hpp"
#include "hpq.hpp"
#include "normalization.hpp"
#include "parallel.hpp"
#include "vinberg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace racg {

namespace detail {

inline Rational row_dot(const RationalMatrix& m, std::size_t i, const RationalVector& v) {
    Rational s(0);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (!m(i, j).is_zero()) s += m(i, j) * v[j];
    return s;
}

/// cosh^2 d = <v,w>^2 / (<v,v><w,w>) for timelike v, w; 0 unless spacelike.
inline double distance_from_pairings(const Rational& c, const Rational& a, const Rational& b) {
    const Rational cosh2 = (c * c) / (a * b);
    if (!(cosh2 > Rational(1))) return 0.0;
    return std::acosh(std::sqrt(cosh2.to_double()));
}

/// Least-squares slope and intercept of y against x.
inline std::pair<double, double> least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    if (x.size() < 2) return {0.0, 0.0};
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxx > 0 ? sxy / sxx : 0.0;
    return {slope, my - slope * mx};
}

}  // namespace detail

/// (rho_t(w) v, d/dtau rho_tau(w) v) for a fixed vector v, exactly.
inline std::pair<RationalVector, RationalVector> apply_dual(const DeformedRep& rep, const Word& w, RationalVector v) {
    RationalVector dv(v.size(), Rational(0));
    const RationalMatrix& n = rep.family().n;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const auto i = static_cast<std::size_t>(*it);
        const Rational nv = detail::row_dot(n, i, v);
        rep.reflect(*it, dv);
        dv[i] -= Rational(2) * nv;
        rep.reflect(*it, v);
    }
    return {std::move(v), std::move(dv)};
}

inline std::pair<Eigen::VectorXd, Eigen::VectorXd> apply_dual(const FloatRep& rep, const Word& w, Eigen::VectorXd v) {
    Eigen::VectorXd dv = Eigen::VectorXd::Zero(v.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const double nv = rep.n().row(*it).dot(v);
        rep.reflect(*it, dv);
        dv(*it) -= 2.0 * nv;
        rep.reflect(*it, v);
    }
    return {std::move(v), std::move(dv)};
}

struct OrbitPoint {
    Word word;           // normal form
    RationalVector v;    // rho_t(word) v0
    RationalVector mv;   // M_t v
    Rational norm2;      // <v, v>_t < 0
    Eigen::VectorXd x;   // iota_t v
};

struct OrbitSample {
    Rational t;
    int max_length = 0;
    RationalVector base_v;
    std::vector<OrbitPoint> points;  // ball order: by length, then lexicographic

    const OrbitPoint& base() const { return points.front(); }
    std::optional<std::size_t> index_of(const Word& nf) const {
        const auto it = std::find_if(points.begin(), points.end(), [&](const OrbitPoint& p) { return p.word == nf; });
        if (it == points.end()) return std::nullopt;
        return static_cast<std::size_t>(it - points.begin());
    }
};

/// v_PF rounded to an exact rational vector.
inline RationalVector default_base(const GramFamily& fam) { return from_eigen_exact(perron(fam).v_pf); }

inline OrbitSample build_orbit(const NormalizedRep& rep, int max_length, const RationalVector& base, int workers = 1) {
    if (max_length < 0) throw ConfigError("orbit length must be nonnegative");
    if (!in_delta(rep.exact(), base, true)) throw ConfigError("orbit base point is not interior to the chamber");
    if (!(rep.exact().pairing(base, base) < Rational(0))) throw ConfigError("orbit base point is not timelike");
    OrbitSample out;
    out.t = rep.t();
    out.max_length = max_length;
    out.base_v = base;
    const auto words = enumerate_ball(rep.family().graph, max_length);
    out.points = parallel_map(words.size(), workers, [&](std::size_t i) {
        OrbitPoint p;
        p.word = words[i];
        p.v = rep.exact().apply(p.word, base);
        p.mv = rep.exact().gram() * p.v;
        p.norm2 = dot(p.v, p.mv);
        p.x = rep.normalizer().push(p.v);
        return p;
    });
    return out;
}

inline OrbitSample build_orbit(const NormalizedRep& rep, int max_length, int workers = 1) {
    return build_orbit(rep, max_length, default_base(rep.family()), workers);
}

/// Sign test of <v,w>_t^2 - <v,v>_t <w,w>_t, exact.
inline bool exact_spacelike(const OrbitPoint& a, const OrbitPoint& b) {
    const Rational c = dot(a.v, b.mv);
    return c * c > a.norm2 * b.norm2;
}

inline double exact_distance(const OrbitPoint& a, const OrbitPoint& b) {
    return detail::distance_from_pairings(dot(a.v, b.mv), a.norm2, b.norm2);
}

/// The pair (rho._t, rho._s) with Phi_{t,s} = M_s^{-1} M_t on the chamber.
class Deformation {
public:
    Deformation(const NormalizedRep& rep_t, const NormalizedRep& rep_s)
        : t_(&rep_t), s_(&rep_s), ft_(rep_t.family(), rep_t.t()), fs_(rep_s.family(), rep_s.t()) {
        require_same_segment(rep_t.family(), rep_t.t(), rep_s.t());
        phi_ = rep_s.exact().gram().inverse() * rep_t.exact().gram();
        phi_f_ = to_eigen(phi_);
    }

    const NormalizedRep& source() const { return *t_; }
    const NormalizedRep& target() const { return *s_; }
    const RationalMatrix& phi() const { return phi_; }

    /// Exact image of an orbit point: rho_s(w) Phi v0.
    RationalVector image(const Word& w, const RationalVector& v0) const { return s_->exact().apply(w, phi_ * v0); }

    /// f_{t,s}(x) for a point of H^{p,q} in standard coordinates: pull back,
    /// reduce to the chamber, apply Phi, push forward along the same word.
    Eigen::VectorXd operator()(const Eigen::VectorXd& x, int budget) const {
        Eigen::VectorXd v = t_->normalizer().pull(x);
        const double sign = v.sum() < 0 ? -1.0 : 1.0;
        const auto red = reduce_to_chamber(ft_, Eigen::VectorXd(sign * v), budget);
        return sign * s_->normalizer().push(fs_.apply(red.word, phi_f_ * red.v_reduced));
    }

private:
    const NormalizedRep* t_;
    const NormalizedRep* s_;
    FloatRep ft_, fs_;
    RationalMatrix phi_;
    Eigen::MatrixXd phi_f_;
};

/// Z_t(x) = d/ds f_{t,s}(x) at s = t. On the chamber d/ds Phi = -M_t^{-1} N,
/// and iota^{-1} iota' = N M_t^{-1} / 2 (exact).
class VectorField {
public:
    explicit VectorField(const NormalizedRep& rep)
        : rep_(&rep), frep_(rep.family(), rep.t()),
          minv_n_(rep.exact().gram().inverse() * rep.family().n),
          b_f_(to_eigen(rep.normalizer().pullback_derivative())), minv_n_f_(to_eigen(minv_n_)) {}

    /// Pulled-back velocity H = B v + rho' v0 - rho M^{-1} N v0 at v = rho(w) v0.
    RationalVector velocity(const Word& w, const RationalVector& v0) const {
        auto [v, dv] = apply_dual(rep_->exact(), w, v0);
        const RationalVector drift = rep_->exact().apply(w, minv_n_ * v0);
        const RationalVector bv = rep_->normalizer().pullback_derivative() * v;
        for (std::size_t i = 0; i < dv.size(); ++i) dv[i] += bv[i] - drift[i];
        return dv;
    }

    /// Unit lift x^ = iota v / n and Z at x^ for the orbit point rho(w) v0.
    std::pair<Eigen::VectorXd, Eigen::VectorXd> at_orbit_point(const OrbitPoint& p, const RationalVector& v0) const {
        const RationalVector h = velocity(p.word, v0);
        const double n = std::sqrt(-p.norm2.to_double());
        const double vh = dot(h, p.mv).to_double();
        const Eigen::VectorXd xh = p.x / n;
        const Eigen::VectorXd z = rep_->normalizer().push(h) / n + xh * (vh / (n * n));
        return {xh, z};
    }

    /// Z at unit_lift(x) for an arbitrary point, in floating point.
    Eigen::VectorXd operator()(const Eigen::VectorXd& x, int budget) const {
        const StandardForm& f = rep_->form();
        Eigen::VectorXd v = rep_->normalizer().pull(x);
        const double sign = v.sum() < 0 ? -1.0 : 1.0;
        const auto red = reduce_to_chamber(frep_, Eigen::VectorXd(sign * v), budget);
        auto [rv, drv] = apply_dual(frep_, red.word, red.v_reduced);
        const Eigen::VectorXd h = b_f_ * rv + drv - frep_.apply(red.word, minv_n_f_ * red.v_reduced);
        const Eigen::VectorXd fx = rep_->normalizer().push(rv), fh = rep_->normalizer().push(h);
        const double n = std::sqrt(-f.norm2(fx));
        const Eigen::VectorXd z = fh / n + fx * (f.pair(fx, fh) / (n * n * n));
        return sign * z;
    }

private:
    const NormalizedRep* rep_;
    FloatRep frep_;
    RationalMatrix minv_n_;
    Eigen::MatrixXd b_f_, minv_n_f_;
};

struct PairRecord {
    std::size_t i = 0, j = 0;
    double before = 0.0;  // d(x, y)
    double after = 0.0;   // d(f x, f y), or the first variation for a vector field
};

struct ContractionReport {
    std::string kind;  // "map" or "vector_field"
    std::size_t pair_count = 0;
    std::size_t spacelike_count = 0;
    std::size_t used_count = 0;  // spacelike with d >= threshold
    std::size_t classification_mismatches = 0;  // double vs exact spacelike test
    double threshold = 1.0;
    double max_ratio = -std::numeric_limits<double>::infinity();
    double max_ratio_all = -std::numeric_limits<double>::infinity();  // over every spacelike pair
    double fit_slope = 0.0;
    double fit_intercept = 0.0;  // smallest C' with after <= slope * before + C' on used pairs
    std::vector<PairRecord> records;  // used pairs, (i, j) order
    std::vector<PairRecord> worst;    // largest ratios first
    bool verdict = false;
};

namespace detail {

inline void finish_report(ContractionReport& rep, std::vector<std::vector<PairRecord>> rows, double bound) {
    for (auto& r : rows)
        for (auto& rec : r) rep.records.push_back(rec);
    rep.used_count = rep.records.size();
    std::vector<double> xs, ys;
    for (const auto& r : rep.records) {
        xs.push_back(r.before);
        ys.push_back(r.after);
        rep.max_ratio = std::max(rep.max_ratio, r.after / r.before);
    }
    rep.fit_slope = least_squares(xs, ys).first;
    double cp = -std::numeric_limits<double>::infinity();
    for (const auto& r : rep.records) cp = std::max(cp, r.after - rep.fit_slope * r.before);
    rep.fit_intercept = rep.records.empty() ? 0.0 : cp;
    rep.worst = rep.records;
    std::stable_sort(rep.worst.begin(), rep.worst.end(),
                     [](const PairRecord& a, const PairRecord& b) { return a.after / a.before > b.after / b.before; });
    if (rep.worst.size() > 10) rep.worst.resize(10);
    if (rep.spacelike_count < 10) throw ConfigError("orbit too small: " + std::to_string(rep.spacelike_count) + " spacelike pairs");
    rep.verdict = rep.used_count > 0 && rep.max_ratio < bound;
}

}  // namespace detail

/// d(f x, f y) against d(x, y) over spacelike orbit pairs.
inline ContractionReport estimate_spacelike_lipschitz(const Deformation& def, const OrbitSample& orbit, double threshold = 1.0, int workers = 1) {
    const auto& pts = orbit.points;
    const auto& rep_s = def.target().exact();
    struct Image {
        RationalVector mu;
        Rational norm2;
        RationalVector u;
    };
    const auto images = parallel_map(pts.size(), workers, [&](std::size_t i) {
        Image im;
        im.u = def.image(pts[i].word, orbit.base_v);
        im.mu = rep_s.gram() * im.u;
        im.norm2 = dot(im.u, im.mu);
        return im;
    });
    const StandardForm& form = def.source().form();
    struct Row {
        std::vector<PairRecord> recs;
        std::size_t spacelike = 0, mismatches = 0;
        double max_all = -std::numeric_limits<double>::infinity();
    };
    auto rows = parallel_map(pts.size(), workers, [&](std::size_t i) {
        Row row;
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const bool sp = exact_spacelike(pts[i], pts[j]);
            const bool fsp = classify_pair(form, pts[i].x, pts[j].x) == PairType::Spacelike;
            if (sp != fsp) ++row.mismatches;
            if (!sp) continue;
            ++row.spacelike;
            const double before = exact_distance(pts[i], pts[j]);
            const double after = detail::distance_from_pairings(dot(images[i].u, images[j].mu), images[i].norm2, images[j].norm2);
            if (before > 0) row.max_all = std::max(row.max_all, after / before);
            if (before >= threshold) row.recs.push_back({i, j, before, after});
        }
        return row;
    });
    ContractionReport rep;
    rep.kind = "map";
    rep.threshold = threshold;
    rep.pair_count = pts.size() * (pts.size() - 1) / 2;
    std::vector<std::vector<PairRecord>> recs;
    for (auto& r : rows) {
        rep.spacelike_count += r.spacelike;
        rep.classification_mismatches += r.mismatches;
        rep.max_ratio_all = std::max(rep.max_ratio_all, r.max_all);
        recs.push_back(std::move(r.recs));
    }
    detail::finish_report(rep, std::move(recs), 1.0);
    return rep;
}

/// Unit lifts and Z values at every orbit point.
inline std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> field_on_orbit(const NormalizedRep& rep, const OrbitSample& orbit, int workers = 1) {
    const VectorField z(rep);
    return parallel_map(orbit.points.size(), workers, [&](std::size_t i) { return z.at_orbit_point(orbit.points[i], orbit.base_v); });
}

/// First variation of d along Z (plus an optional Killing field Y) over
/// spacelike orbit pairs, divided by d.
inline ContractionReport estimate_vf_lipschitz(const NormalizedRep& rep, const OrbitSample& orbit, double threshold = 1.0,
                                               int workers = 1, const Eigen::MatrixXd* killing = nullptr) {
    const auto& pts = orbit.points;
    const StandardForm& form = rep.form();
    auto field = field_on_orbit(rep, orbit, workers);
    if (killing)
        for (auto& [xh, z] : field) z += killing_value(*killing, xh);
    struct Row {
        std::vector<PairRecord> recs;
        std::size_t spacelike = 0, mismatches = 0;
        double max_all = -std::numeric_limits<double>::infinity();
    };
    auto rows = parallel_map(pts.size(), workers, [&](std::size_t i) {
        Row row;
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const bool sp = exact_spacelike(pts[i], pts[j]);
            const PairType ft = classify_pair(form, field[i].first, field[j].first);
            if (sp != (ft == PairType::Spacelike)) ++row.mismatches;
            if (!sp || ft != PairType::Spacelike) continue;
            ++row.spacelike;
            const double d = exact_distance(pts[i], pts[j]);
            const double fv = first_variation(form, field[i].first, field[j].first, field[i].second, field[j].second);
            row.max_all = std::max(row.max_all, fv / d);
            if (d >= threshold) row.recs.push_back({i, j, d, fv});
        }
        return row;
    });
    ContractionReport out;
    out.kind = "vector_field";
    out.threshold = threshold;
    out.pair_count = pts.size() * (pts.size() - 1) / 2;
    std::vector<std::vector<PairRecord>> recs;
    for (auto& r : rows) {
        out.spacelike_count += r.spacelike;
        out.classification_mismatches += r.mismatches;
        out.max_ratio_all = std::max(out.max_ratio_all, r.max_all);
        recs.push_back(std::move(r.recs));
    }
    detail::finish_report(out, std::move(recs), 0.0);
    return out;
}

struct QuadricReport {
    int samples = 0;
    bool vacuous = false;
    double max_identity_residual = 0.0;  // |<w,Nw> + <w,w>/t| over unit null w
    double min_margin = 0.0;             // min <w,Nw> / |1/t|
    std::optional<Rational> s;
    double min_expansion = 0.0;          // min <w, M_s w> when s is given
    bool verdict = false;
};

/// Null vectors of M_t: <w, N w> = -<w, w>/t > 0, and <w, M_s w> > 0 for s in (t, 0).
inline QuadricReport quadric_expansion_check(const GramFamily& fam, const Rational& t, int samples, std::uint64_t seed,
                                             std::optional<Rational> s = std::nullopt) {
    if (Rational(-1) < t) throw ConfigError("quadric check needs t <= -1");
    QuadricReport out;
    out.samples = samples;
    out.s = s;
    const Inertia sig = signature(gram_matrix(fam, t));
    if (sig.positive == 0 || sig.negative == 0) {
        out.vacuous = true;
        out.verdict = true;
        return out;
    }
    const Eigen::MatrixXd m = to_eigen(gram_matrix(fam, t)), n = to_eigen(fam.n);
    const double td = t.to_double();
    const Eigen::MatrixXd ms = s ? to_eigen(gram_matrix(fam, *s)) : Eigen::MatrixXd();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    auto gaussian = [&] {
        Eigen::VectorXd v(m.rows());
        for (auto& x : v) x = nd(rng);
        return v;
    };
    out.min_margin = std::numeric_limits<double>::infinity();
    out.min_expansion = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples;) {
        const Eigen::VectorXd a = gaussian(), b = gaussian();
        const double qa = a.dot(m * a), qb = b.dot(m * b), qab = a.dot(m * b);
        if (!(qa < 0 && qb > 0)) continue;
        // qa + 2 s qab + s^2 qb = 0
        const double disc = qab * qab - qa * qb;
        const double r = (-qab + std::sqrt(disc)) / qb;
        const Eigen::VectorXd w = (a + r * b).normalized();
        ++k;
        out.max_identity_residual = std::max(out.max_identity_residual, std::abs(w.dot(n * w) + 1.0 / td));
        out.min_margin = std::min(out.min_margin, w.dot(n * w) / std::abs(1.0 / td));
        if (s) out.min_expansion = std::min(out.min_expansion, w.dot(ms * w));
    }
    out.verdict = out.max_identity_residual < 1e-10 && out.min_margin >= 1 - 1e-9 && (!s || out.min_expansion > 0);
    return out;
}

struct EscapeReport {
    std::vector<double> min_distance;  // by word length, index 0 unused
    std::size_t non_spacelike = 0;     // points of length >= 2 not spacelike from the base
    std::optional<Word> witness;
    int monotone_from = 0;             // smallest L with min_distance nondecreasing from L on
    bool verdict = false;
};

inline EscapeReport spacelike_escape_check(const OrbitSample& orbit) {
    if (orbit.max_length < 4) throw ConfigError("escape check needs orbit length >= 4");
    EscapeReport out;
    out.min_distance.assign(static_cast<std::size_t>(orbit.max_length) + 1, std::numeric_limits<double>::infinity());
    out.min_distance[0] = 0.0;
    const auto& base = orbit.base();
    for (const auto& p : orbit.points) {
        const auto len = p.word.size();
        if (len == 0) continue;
        const bool sp = exact_spacelike(base, p);
        if (len >= 2 && !sp) {
            ++out.non_spacelike;
            if (!out.witness) out.witness = p.word;
        }
        out.min_distance[len] = std::min(out.min_distance[len], exact_distance(base, p));
    }
    int from = orbit.max_length;
    while (from > 1 && out.min_distance[static_cast<std::size_t>(from - 1)] <= out.min_distance[static_cast<std::size_t>(from)]) --from;
    out.monotone_from = from;
    out.verdict = out.non_spacelike == 0 && out.monotone_from <= 2;
    return out;
}

struct AffineProbeEntry {
    std::vector<Word> argmin;
    double min_norm = 0.0;
    int argmin_length = 0;
    bool interior = false;
};

struct AffineProbeReport {
    std::vector<AffineProbeEntry> entries;  // one per sampled Y
    int equivariance_checked = 0;
    int equivariance_skipped = 0;  // translate left the sample
    int equivariance_failures = 0;
    bool verdict = false;
    std::string note;
};

/// Discrete argmin over the orbit of |Z(x) - Y(x)|_x, with the norm family
/// |V|_x = |g0^{-1} rho.(w)^{-1} V| transported from the base point.
class AffineProbe {
public:
    AffineProbe(const NormalizedRep& rep, const OrbitSample& orbit, int workers = 1)
        : rep_(&rep), orbit_(&orbit), field_(field_on_orbit(rep, orbit, workers)) {
        const StandardForm& f = rep.form();
        g0inv_ = f.group_inverse(frame_at(f, field_.front().first));
        transports_ = parallel_map(orbit.points.size(), workers, [&](std::size_t i) {
            return Eigen::MatrixXd(g0inv_ * rep.inverse_matrix(orbit.points[i].word));
        });
    }

    std::vector<double> norms(const Eigen::MatrixXd& y) const {
        std::vector<double> out;
        for (std::size_t i = 0; i < field_.size(); ++i) {
            const auto& [xh, z] = field_[i];
            out.push_back((transports_[i] * (z - killing_value(y, xh))).norm());
        }
        return out;
    }

    AffineProbeEntry argmin(const Eigen::MatrixXd& y) const {
        const auto n = norms(y);
        AffineProbeEntry e;
        e.min_norm = *std::min_element(n.begin(), n.end());
        for (std::size_t i = 0; i < n.size(); ++i)
            if (n[i] <= e.min_norm * (1 + 1e-9) + 1e-12) {
                e.argmin.push_back(orbit_->points[i].word);
                e.argmin_length = std::max(e.argmin_length, static_cast<int>(orbit_->points[i].word.size()));
            }
        e.interior = e.argmin_length < orbit_->max_length;
        return e;
    }

    AffineProbeReport run(const std::vector<Eigen::MatrixXd>& ys, const std::vector<Word>& gammas) const {
        AffineProbeReport out;
        const auto& graph = rep_->family().graph;
        for (const auto& y : ys) {
            const AffineProbeEntry e = argmin(y);
            out.entries.push_back(e);
            if (!e.interior) continue;
            for (const auto& g : gammas) {
                std::vector<Word> expected;
                bool inside = true;
                for (const auto& w : e.argmin) {
                    Word moved = normal_form(graph, concat(g, w));
                    if (static_cast<int>(moved.size()) >= orbit_->max_length) inside = false;
                    expected.push_back(std::move(moved));
                }
                if (!inside) {
                    ++out.equivariance_skipped;
                    continue;
                }
                const Eigen::MatrixXd y2 = affine_act(*rep_, g, y);
                AffineProbeEntry moved = argmin(y2);
                std::sort(expected.begin(), expected.end());
                std::sort(moved.argmin.begin(), moved.argmin.end());
                ++out.equivariance_checked;
                if (moved.argmin != expected) ++out.equivariance_failures;
            }
        }
        const bool all_interior = std::all_of(out.entries.begin(), out.entries.end(), [](const auto& e) { return e.interior; });
        if (!all_interior) out.note = "inconclusive: argmin on the orbit boundary, increase orbit length";
        out.verdict = all_interior && out.equivariance_failures == 0;
        return out;
    }

private:
    const NormalizedRep* rep_;
    const OrbitSample* orbit_;
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> field_;
    Eigen::MatrixXd g0inv_;
    std::vector<Eigen::MatrixXd> transports_;
};

struct GroupProbeReport {
    std::vector<Word> words;
    std::vector<double> mu_t, mu_s, lambda_t, lambda_s;
    std::vector<bool> proximal;  // rho._t(w) proximal
    double slope = 0.0, intercept = 0.0;
    std::size_t proximal_count = 0;
    double max_lambda_excess = -std::numeric_limits<double>::infinity();  // max lambda_s - lambda_t over proximal
    std::optional<Word> lambda_witness;
    bool verdict = false;
};

/// mu_1 and lambda_1 of rho._t(w) against rho._s(w).
inline GroupProbeReport properness_probe_group(const NormalizedRep& rep_t, const NormalizedRep& rep_s, const std::vector<Word>& words,
                                               int workers = 1, double tol = 1e-6) {
    GroupProbeReport out;
    out.words = words;
    struct Row {
        double mt, ms, lt, ls;
        bool prox;
    };
    const auto rows = parallel_map(words.size(), workers, [&](std::size_t i) {
        const Eigen::MatrixXd gt = rep_t.matrix(words[i]), gs = rep_s.matrix(words[i]);
        return Row{mu1(gt), mu1(gs), lambda1(gt), lambda1(gs), is_proximal(gt)};
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.mu_t.push_back(rows[i].mt);
        out.mu_s.push_back(rows[i].ms);
        out.lambda_t.push_back(rows[i].lt);
        out.lambda_s.push_back(rows[i].ls);
        out.proximal.push_back(rows[i].prox);
        if (rows[i].prox) {
            ++out.proximal_count;
            const double excess = rows[i].ls - rows[i].lt;
            if (excess > out.max_lambda_excess) {
                out.max_lambda_excess = excess;
                out.lambda_witness = words[i];
            }
        }
    }
    std::tie(out.slope, out.intercept) = detail::least_squares(out.mu_t, out.mu_s);
    out.verdict = out.slope < 1.0 && (out.proximal_count == 0 || out.max_lambda_excess <= tol);
    return out;
}

}  // namespace racg
