#include "racg/banach.hpp"
#include "racg/graph_io.hpp"
#include "racg/verifier.hpp"
#include "hpq_support.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace racg;

namespace {

Eigen::VectorXd unit(const StandardForm& f, const Eigen::VectorXd& v) { return unit_lift(f, v); }

/// Same point of H^{p,q}: x = +-c y.
double projective_gap(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::VectorXd a = x.normalized(), b = y.normalized();
    return std::min((a - b).norm(), (a + b).norm());
}

/// A point rho_t(w) v with v a random interior point of the chamber near v0.
RationalVector random_orbit_vector(std::mt19937_64& rng, const DeformedRep& rep, const RationalVector& v0, int max_len) {
    std::uniform_int_distribution<int> jitter(-50, 50);
    for (;;) {
        RationalVector v = v0;
        for (auto& c : v) c += Rational(jitter(rng), 1000);
        if (in_delta(rep, v, true) && rep.pairing(v, v) < Rational(0))
            return rep.apply(testgen::random_word(rng, static_cast<int>(v.size()), max_len), v);
    }
}

}  // namespace

TEST(Parallel, OrderAndExceptions) {
    auto square = [](std::size_t i) { return static_cast<long>(i * i); };
    EXPECT_EQ(parallel_map(100, 1, square), parallel_map(100, 4, square));
    EXPECT_TRUE(parallel_map(0, 3, square).empty());
    EXPECT_THROW(parallel_map(50, 3,
                              [](std::size_t i) {
                                  if (i == 17) throw NumericalError("boom");
                                  return i;
                              }),
                 NumericalError);
}

TEST(ApplyDual, MatchesMatrixDerivative) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 3 + trial % 4;
        const GramFamily fam(testgen::random_graph(rng, k));
        const Rational t = testgen::random_rational(rng, -5, -1);
        const DeformedRep rep(fam, t);
        RationalVector v(static_cast<std::size_t>(k));
        for (auto& c : v) c = testgen::random_rational(rng, -3, 3);
        const Word w = testgen::random_word(rng, k, 6);
        const auto rd = rep.represent_dual(w);
        const auto [a, da] = apply_dual(rep, w, v);
        EXPECT_EQ(a, rd.value * v);
        EXPECT_EQ(da, rd.deriv * v);
        const FloatRep fr(fam, t);
        const auto [b, db] = apply_dual(fr, w, to_eigen(v));
        EXPECT_LT((b - to_eigen(a)).norm(), 1e-9 * (1 + b.norm()));
        EXPECT_LT((db - to_eigen(da)).norm(), 1e-9 * (1 + db.norm()));
    }
}

TEST(Orbit, ExactPointsAndDistances) {
    const GramFamily fam(preset_graph("free(3)"));
    const NormalizedRep rep(fam, Rational(-2));
    const auto orbit = build_orbit(rep, 4);
    EXPECT_EQ(orbit.points.size(), 1u + 3 + 6 + 12 + 24);
    EXPECT_TRUE(orbit.base().word.empty());
    const StandardForm& f = rep.form();
    for (const auto& p : orbit.points) {
        EXPECT_LT(p.norm2, Rational(0));
        EXPECT_NEAR(f.norm2(p.x), p.norm2.to_double(), 1e-9 * std::abs(p.norm2.to_double()) * (1 + p.x.squaredNorm()));
    }
    for (std::size_t i = 0; i < orbit.points.size(); i += 5)
        for (std::size_t j = i + 1; j < orbit.points.size(); j += 3) {
            const auto& a = orbit.points[i];
            const auto& b = orbit.points[j];
            ASSERT_TRUE(exact_spacelike(a, b));
            EXPECT_NEAR(exact_distance(a, b), pseudo_distance(f, a.x, b.x), 1e-7);
        }
    EXPECT_THROW(build_orbit(rep, 2, RationalVector{Rational(1), Rational(0), Rational(0)}), ConfigError);
}

TEST(Deformation, IdentityAtEqualParameters) {
    const GramFamily fam(preset_graph("cycle(5)"));
    const NormalizedRep rep(fam, Rational(-5, 2));
    const Deformation def(rep, rep);
    const auto orbit = build_orbit(rep, 3);
    for (const auto& p : orbit.points) {
        EXPECT_EQ(def.image(p.word, orbit.base_v), p.v);
        EXPECT_LT(projective_gap(def(p.x, 200), p.x), 1e-10);
    }
}

TEST(Deformation, RejectsSeparatedParameters) {
    const GramFamily fam(preset_graph("cycle(5)"));
    const NormalizedRep a(fam, Rational(-5, 2)), b(fam, Rational(-1));
    EXPECT_THROW(Deformation(a, b), ConfigError);
}

TEST(Deformation, FloatPathMatchesExactImages) {
    const GramFamily fam(preset_graph("free(3)"));
    const NormalizedRep rt(fam, Rational(-2)), rs(fam, Rational(-19, 10));
    const Deformation def(rt, rs);
    const auto orbit = build_orbit(rt, 4);
    for (const auto& p : orbit.points) {
        const Eigen::VectorXd exact = rs.normalizer().push(def.image(p.word, orbit.base_v));
        EXPECT_LT(projective_gap(def(p.x, 200), exact), 1e-9) << word_to_string(p.word);
    }
}

TEST(Deformation, Equivariant) {
    std::mt19937_64 rng(11);
    for (const char* g : {"free(3)", "cycle(5)"}) {
        const GramFamily fam(preset_graph(g));
        const Rational t = std::string(g) == "free(3)" ? Rational(-2) : Rational(-5, 2);
        const Rational s = std::string(g) == "free(3)" ? Rational(-19, 10) : Rational(-12, 5);
        const NormalizedRep rt(fam, t), rs(fam, s);
        const Deformation def(rt, rs);
        const RationalVector v0 = default_base(fam);
        for (int trial = 0; trial < 200; ++trial) {
            const Eigen::VectorXd x = rt.normalizer().push(random_orbit_vector(rng, rt.exact(), v0, 3));
            const Word gamma = testgen::random_word(rng, fam.k(), 3);
            const Eigen::VectorXd lhs = def(rt.matrix(gamma) * x, 200);
            const Eigen::VectorXd rhs = rs.matrix(gamma) * def(x, 200);
            EXPECT_LT(projective_gap(lhs, rhs), 1e-9) << g << " " << word_to_string(gamma);
        }
    }
}

TEST(VectorField, OrbitFormulaMatchesFloatPath) {
    const GramFamily fam(preset_graph("cycle(5)"));
    const NormalizedRep rep(fam, Rational(-5, 2));
    const VectorField z(rep);
    const auto orbit = build_orbit(rep, 4);
    const StandardForm& f = rep.form();
    for (const auto& p : orbit.points) {
        const auto [xh, zx] = z.at_orbit_point(p, orbit.base_v);
        EXPECT_NEAR(f.norm2(xh), -1.0, 1e-9);
        EXPECT_LT(std::abs(f.pair(xh, zx)), 1e-8 * (1 + zx.norm() * xh.norm()));  // tangent
        const Eigen::VectorXd zf = z(xh, 200);
        EXPECT_LT((zf - zx).norm(), 1e-8 * (1 + zx.norm())) << word_to_string(p.word);
    }
}

TEST(VectorField, CentralDifferenceOfMaps) {
    std::mt19937_64 rng(5);
    const GramFamily fam(preset_graph("free(3)"));
    const Rational t(-2), h(1, 10000);
    const NormalizedRep rt(fam, t), rp(fam, t + h), rm(fam, t - h);
    const Deformation fp(rt, rp), fm(rt, rm);
    const VectorField z(rt);
    const StandardForm& f = rt.form();
    const RationalVector v0 = default_base(fam);
    for (int trial = 0; trial < 60; ++trial) {
        const Eigen::VectorXd xh = unit(f, rt.normalizer().push(random_orbit_vector(rng, rt.exact(), v0, 3)));
        const Eigen::VectorXd a = unit(f, fp(xh, 200)), b = unit(f, fm(xh, 200));
        const Eigen::VectorXd fd = (a - b) / (2 * h.to_double());
        const Eigen::VectorXd zx = z(xh, 200);
        EXPECT_LT((fd - zx).norm(), 1e-5 * (1 + zx.norm()));
    }
}

TEST(VectorField, EquivariantUpToCocycle) {
    // Z(rho.(g) x) = rho.(g) Z(x) + u(g) rho.(g) x
    std::mt19937_64 rng(8);
    const GramFamily fam(preset_graph("cycle(6)"));
    const NormalizedRep rep(fam, Rational(-5, 2));
    const VectorField z(rep);
    const StandardForm& f = rep.form();
    const RationalVector v0 = default_base(fam);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::VectorXd xh = unit(f, rep.normalizer().push(random_orbit_vector(rng, rep.exact(), v0, 2)));
        const Word g = testgen::random_word(rng, fam.k(), 3);
        const Eigen::MatrixXd rg = rep.matrix(g);
        const Eigen::VectorXd lhs = z(rg * xh, 200);
        const Eigen::VectorXd rhs = rg * z(xh, 200) + rep.cocycle(g) * rg * xh;
        EXPECT_LT((lhs - rhs).norm(), 1e-8 * (1 + rhs.norm()));
    }
}

TEST(Contraction, SmallOrbitsContract) {
    for (const char* g : {"free(3)", "cycle(5)"}) {
        const GramFamily fam(preset_graph(g));
        const bool free3 = std::string(g) == "free(3)";
        const NormalizedRep rt(fam, free3 ? Rational(-2) : Rational(-5, 2));
        const NormalizedRep rs(fam, free3 ? Rational(-19, 10) : Rational(-12, 5));
        const auto orbit = build_orbit(rt, 4, 2);
        const auto m = estimate_spacelike_lipschitz(Deformation(rt, rs), orbit, 1.0, 2);
        EXPECT_TRUE(m.verdict) << g << " " << m.max_ratio;
        EXPECT_EQ(m.classification_mismatches, 0u);
        EXPECT_GT(m.used_count, 100u);
        for (const auto& r : m.records) EXPECT_LE(r.after, m.fit_slope * r.before + m.fit_intercept + 1e-12);
        const auto v = estimate_vf_lipschitz(rt, orbit, 1.0, 2);
        EXPECT_TRUE(v.verdict) << g << " " << v.max_ratio;
        EXPECT_LT(v.max_ratio, 0.0);
    }
}

TEST(Contraction, DeterministicAcrossWorkers) {
    const GramFamily fam(preset_graph("cycle(5)"));
    const NormalizedRep rt(fam, Rational(-5, 2)), rs(fam, Rational(-12, 5));
    const auto o1 = build_orbit(rt, 3, 1), o3 = build_orbit(rt, 3, 3);
    const auto a = estimate_spacelike_lipschitz(Deformation(rt, rs), o1, 1.0, 1);
    const auto b = estimate_spacelike_lipschitz(Deformation(rt, rs), o3, 1.0, 3);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(a.records[i].before, b.records[i].before);
        EXPECT_EQ(a.records[i].after, b.records[i].after);
    }
    EXPECT_EQ(a.max_ratio, b.max_ratio);
}

TEST(Contraction, KillingFieldsDoNotChangeFirstVariation) {
    std::mt19937_64 rng(21);
    const GramFamily fam(preset_graph("free(3)"));
    const NormalizedRep rep(fam, Rational(-2));
    const auto orbit = build_orbit(rep, 3);
    const auto plain = estimate_vf_lipschitz(rep, orbit);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::MatrixXd y = testgen::random_algebra_element(rng, rep.form(), 0.3);
        const auto shifted = estimate_vf_lipschitz(rep, orbit, 1.0, 1, &y);
        ASSERT_EQ(plain.records.size(), shifted.records.size());
        for (std::size_t i = 0; i < plain.records.size(); ++i)
            EXPECT_NEAR(plain.records[i].after, shifted.records[i].after, 1e-7 * (1 + std::abs(plain.records[i].after)));
    }
}

TEST(Contraction, TinyOrbitIsAConfigError) {
    const GramFamily fam(preset_graph("free(3)"));
    const NormalizedRep rt(fam, Rational(-2)), rs(fam, Rational(-19, 10));
    const auto orbit = build_orbit(rt, 1);
    EXPECT_THROW(estimate_spacelike_lipschitz(Deformation(rt, rs), orbit), ConfigError);
}

TEST(Quadric, NullVectorIdentityAndExpansion) {
    for (const char* g : {"free(3)", "cycle(5)", "cycle(6)"}) {
        const GramFamily fam(preset_graph(g));
        const auto r = quadric_expansion_check(fam, Rational(-3), 1000, 7, Rational(-14, 5));
        EXPECT_FALSE(r.vacuous);
        EXPECT_LT(r.max_identity_residual, 1e-10) << g;
        EXPECT_GE(r.min_margin, 1 - 1e-9) << g;
        EXPECT_GT(r.min_expansion, 0.0) << g;
        EXPECT_TRUE(r.verdict);
    }
}

TEST(Quadric, DefiniteFormIsVacuous) {
    const GramFamily fam(CoxeterGraph(3));  // finite group, M_t = Id
    const auto r = quadric_expansion_check(fam, Rational(-2), 100, 1);
    EXPECT_TRUE(r.vacuous);
    EXPECT_TRUE(r.verdict);
    EXPECT_THROW(quadric_expansion_check(fam, Rational(-1, 2), 10, 1), ConfigError);
}

TEST(Escape, FarOrbitPointsAreSpacelike) {
    for (const char* g : {"free(3)", "cycle(5)"}) {
        const GramFamily fam(preset_graph(g));
        const NormalizedRep rep(fam, std::string(g) == "free(3)" ? Rational(-2) : Rational(-5, 2));
        const auto e = spacelike_escape_check(build_orbit(rep, 5));
        EXPECT_EQ(e.non_spacelike, 0u) << g;
        EXPECT_LE(e.monotone_from, 2) << g;
        EXPECT_TRUE(e.verdict);
        for (std::size_t l = 2; l + 1 < e.min_distance.size(); ++l) EXPECT_LE(e.min_distance[l], e.min_distance[l + 1]);
    }
}

TEST(AffineProbe, NormsAreEquivariant) {
    std::mt19937_64 rng(4);
    const GramFamily fam(preset_graph("free(3)"));
    const NormalizedRep rep(fam, Rational(-2));
    const auto orbit = build_orbit(rep, 5);
    const AffineProbe probe(rep, orbit);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::MatrixXd y = testgen::random_algebra_element(rng, rep.form(), 0.5);
        const Word g = normal_form(fam.graph, testgen::random_word(rng, 3, 2));
        const auto before = probe.norms(y), after = probe.norms(affine_act(rep, g, y));
        for (std::size_t i = 0; i < orbit.points.size(); ++i) {
            const Word moved = normal_form(fam.graph, concat(g, orbit.points[i].word));
            const auto j = orbit.index_of(moved);
            if (!j) continue;
            EXPECT_NEAR(after[*j], before[i], 1e-7 * (1 + before[i]));
        }
    }
}

TEST(AffineProbe, ArgminMovesWithTheGroup) {
    std::mt19937_64 rng(9);
    const GramFamily fam(preset_graph("free(3)"));
    const NormalizedRep rep(fam, Rational(-2));
    const auto orbit = build_orbit(rep, 6);
    const AffineProbe probe(rep, orbit);
    std::vector<Eigen::MatrixXd> ys;
    for (int i = 0; i < 4; ++i) ys.push_back(testgen::random_algebra_element(rng, rep.form(), 0.2));
    const auto r = probe.run(ys, {{0}, {1}, {0, 1}, {2, 1}});
    EXPECT_EQ(r.equivariance_failures, 0);
    if (r.verdict) EXPECT_GT(r.equivariance_checked, 0);
    else EXPECT_FALSE(r.note.empty());
}

TEST(GroupProbe, TranslationLengthsShrink) {
    const GramFamily fam(preset_graph("free(3)"));
    const NormalizedRep rt(fam, Rational(-2)), rs(fam, Rational(-19, 10));
    const auto r = properness_probe_group(rt, rs, enumerate_ball(fam.graph, 5));
    EXPECT_LT(r.slope, 1.0);
    EXPECT_GT(r.proximal_count, 0u);
    EXPECT_LE(r.max_lambda_excess, 1e-6);
    EXPECT_TRUE(r.verdict);
    // the identity: all gauges vanish
    EXPECT_NEAR(r.mu_t.front(), 0.0, 1e-12);
    EXPECT_FALSE(r.proximal.front());
}

namespace {

/// Radial scaling by c toward the base point of H^n: c-Lipschitz.
Eigen::VectorXd radial(const StandardForm& f, const Eigen::VectorXd& x, double c) {
    const Eigen::Index n = f.dim();
    const Eigen::VectorXd o = Eigen::VectorXd::Unit(n, n - 1);
    const Eigen::VectorXd xh = upper_lift(f, x);
    const double r = std::acosh(std::max(1.0, xh(n - 1)));
    if (r < 1e-300) return o;
    const Eigen::VectorXd u = (xh - std::cosh(r) * o) / std::sinh(r);
    return std::cosh(c * r) * o + std::sinh(c * r) * u;
}

}  // namespace

TEST(Banach, FixedPointOfRadialContraction) {
    std::mt19937_64 rng(2);
    const StandardForm f(3, 0);
    const double c = 0.6;
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXd g = matrix_exp(testgen::random_algebra_element(rng, f, 0.4));
        const Eigen::VectorXd x0 = testgen::random_hpq_point(rng, f, 2.0);
        const auto res = banach_projection(f, [&](const Eigen::VectorXd& x) { return radial(f, x, c); }, c, g, x0, 1e-11);
        EXPECT_LE(res.iterations, res.bound);
        EXPECT_LT(res.final_displacement, 1e-11 * (1 - c));
        const Eigen::VectorXd again = upper_lift(f, f.group_inverse(g) * radial(f, res.point, c));
        EXPECT_LT(hyperbolic_distance(f, res.point, again), 1e-10);
    }
    // g = Id: the fixed point is the center
    const auto res = banach_projection(f, [&](const Eigen::VectorXd& x) { return radial(f, x, c); }, c,
                                       Eigen::MatrixXd::Identity(4, 4), testgen::random_hpq_point(rng, f, 3.0));
    EXPECT_LT(hyperbolic_distance(f, res.point, Eigen::VectorXd::Unit(4, 3)), 1e-9);
}

TEST(Banach, WrongConstantIsDetected) {
    const StandardForm f(2, 0);
    Eigen::VectorXd x0(3);
    x0 << 3.0, 0.0, std::sqrt(10.0);
    auto slow = [&](const Eigen::VectorXd& x) { return radial(f, x, 0.99); };
    EXPECT_THROW(banach_projection(f, slow, 0.2, Eigen::MatrixXd::Identity(3, 3), x0), NumericalError);
    EXPECT_THROW(banach_projection(f, slow, 1.5, Eigen::MatrixXd::Identity(3, 3), x0), ConfigError);
    EXPECT_THROW(banach_projection(StandardForm(2, 1), slow, 0.5, Eigen::MatrixXd::Identity(4, 4), Eigen::VectorXd::Unit(4, 3)), ConfigError);
}

TEST(Banach, HyperbolicDistanceIsAccurateForNearbyPoints) {
    const StandardForm f(2, 0);
    Eigen::VectorXd x(3), y(3);
    const double d = 1e-12;
    x << std::sinh(0.5), 0.0, std::cosh(0.5);
    y << std::sinh(0.5 + d), 0.0, std::cosh(0.5 + d);
    EXPECT_NEAR(hyperbolic_distance(f, x, y), d, 1e-15);
    EXPECT_NEAR(hyperbolic_distance(f, x, -x * -1.0), 0.0, 0.0);
}

TEST(Deformation, BasePointTracksThePerronVector) {
    for (const char* g : {"free(3)", "cycle(5)", "cycle(6)"}) {
        const GramFamily fam(preset_graph(g));
        const NormalizedRep rt(fam, Rational(-5, 2)), rs(fam, Rational(-12, 5));
        const Deformation def(rt, rs);
        const RationalVector v0 = default_base(fam);
        EXPECT_LT(projective_gap(def(rt.normalizer().push(v0), 100), rs.normalizer().push(v0)), 1e-9) << g;
    }
}

TEST(Contraction, EqualParametersGiveUnitRatios) {
    const GramFamily fam(preset_graph("free(3)"));
    const NormalizedRep rt(fam, Rational(-2));
    const auto r = estimate_spacelike_lipschitz(Deformation(rt, rt), build_orbit(rt, 4));
    for (const auto& rec : r.records) EXPECT_NEAR(rec.after / rec.before, 1.0, 1e-9);
    EXPECT_FALSE(r.verdict);
}

TEST(Contraction, SlopeDecreasesWithTheDeformation) {
    const GramFamily fam(preset_graph("free(3)"));
    const NormalizedRep rt(fam, Rational(-2));
    const auto orbit = build_orbit(rt, 5);
    double previous = 1.0;
    for (const Rational& s : {Rational(-19, 10), Rational(-9, 5), Rational(-17, 10)}) {
        const NormalizedRep rs(fam, s);
        const auto r = estimate_spacelike_lipschitz(Deformation(rt, rs), orbit);
        EXPECT_LT(r.fit_slope, previous) << s.str();
        previous = r.fit_slope;
    }
}

TEST(VectorField, ForwardDifferenceOfMaps) {
    std::mt19937_64 rng(15);
    const GramFamily fam(preset_graph("cycle(5)"));
    const Rational t(-5, 2), h(1, 1000000);
    const NormalizedRep rt(fam, t), rp(fam, t + h);
    const Deformation fp(rt, rp);
    const VectorField z(rt);
    const StandardForm& f = rt.form();
    const RationalVector v0 = default_base(fam);
    for (int trial = 0; trial < 60; ++trial) {
        const Eigen::VectorXd xh = unit(f, rt.normalizer().push(random_orbit_vector(rng, rt.exact(), v0, 3)));
        const Eigen::VectorXd fd = (unit(f, fp(xh, 200)) - xh) / h.to_double();
        const Eigen::VectorXd zx = z(xh, 200);
        EXPECT_LT((fd - zx).norm(), 1e-5 * (1 + zx.norm()));
    }
}

TEST(VectorField, ChainRuleAlongTheDeformation) {
    // d/ds f_{t,s}(x) at s = tau equals Z_tau(f_{t,tau}(x))
    std::mt19937_64 rng(16);
    const GramFamily fam(preset_graph("free(3)"));
    const Rational t(-2), tau(-19, 10), h(1, 100000);
    const NormalizedRep rt(fam, t), rtau(fam, tau), rp(fam, tau + h), rm(fam, tau - h);
    const Deformation f0(rt, rtau), fp(rt, rp), fm(rt, rm);
    const VectorField z(rtau);
    const StandardForm& f = rt.form();
    const RationalVector v0 = default_base(fam);
    for (int trial = 0; trial < 60; ++trial) {
        const Eigen::VectorXd xh = unit(f, rt.normalizer().push(random_orbit_vector(rng, rt.exact(), v0, 3)));
        const Eigen::VectorXd fd = (unit(f, fp(xh, 200)) - unit(f, fm(xh, 200))) / (2 * h.to_double());
        const Eigen::VectorXd zx = z(unit(f, f0(xh, 200)), 200);
        EXPECT_LT((fd - zx).norm(), 1e-5 * (1 + zx.norm()));
    }
}

TEST(VectorField, BasePointMovesAlongTheTrackedCurve) {
    const GramFamily fam(preset_graph("cycle(6)"));
    const Rational t(-5, 2), h(1, 100000);
    const NormalizedRep rep(fam, t);
    const Normalizer np(fam, t + h), nm(fam, t - h);
    const StandardForm& f = rep.form();
    const RationalVector v0 = default_base(fam);
    const Eigen::VectorXd xh = unit(f, rep.normalizer().push(v0));
    const Eigen::VectorXd curve = (unit(f, np.push(v0)) - unit(f, nm.push(v0))) / (2 * h.to_double());
    const Eigen::VectorXd zx = VectorField(rep)(xh, 10);
    EXPECT_LT((tangent_projection(f, xh, curve) - tangent_projection(f, xh, zx)).norm(), 1e-6 * (1 + zx.norm()));
}

TEST(Contraction, KillingFieldAloneHasZeroFirstVariation) {
    std::mt19937_64 rng(17);
    const GramFamily fam(preset_graph("cycle(5)"));
    const NormalizedRep rep(fam, Rational(-5, 2));
    const auto orbit = build_orbit(rep, 3);
    const StandardForm& f = rep.form();
    const Eigen::MatrixXd y = testgen::random_algebra_element(rng, f, 0.5);
    for (std::size_t i = 0; i < orbit.points.size(); i += 3)
        for (std::size_t j = i + 1; j < orbit.points.size(); j += 2) {
            if (!exact_spacelike(orbit.points[i], orbit.points[j])) continue;
            const Eigen::VectorXd a = unit(f, orbit.points[i].x), b = unit(f, orbit.points[j].x);
            EXPECT_NEAR(first_variation(f, a, b, killing_value(y, a), killing_value(y, b)), 0.0, 1e-8);
        }
}

TEST(AffineProbe, ZeroFieldHasAnInteriorArgmin) {
    const GramFamily fam(preset_graph("free(3)"));
    const NormalizedRep rep(fam, Rational(-2));
    const auto orbit = build_orbit(rep, 6);
    const AffineProbe probe(rep, orbit);
    const auto e = probe.argmin(Eigen::MatrixXd::Zero(4, 4));
    EXPECT_TRUE(e.interior);
    EXPECT_LT(e.argmin_length, 6);
}
