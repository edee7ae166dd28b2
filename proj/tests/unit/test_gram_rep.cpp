#include "racg/graph_io.hpp"
#include "racg/gram_rep.hpp"
#include "racg/vinberg.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace racg;

namespace {

const Rational minus_two(-2);

}  // namespace

TEST(GramMatrix, FreeThree) {
    const GramFamily fam(preset_graph("free(3)"));
    EXPECT_EQ(gram_matrix(fam, minus_two), (RationalMatrix{{1, -2, -2}, {-2, 1, -2}, {-2, -2, 1}}));
    EXPECT_EQ(gram_matrix(fam, Rational(0)), RationalMatrix::identity(3));
}

TEST(GramMatrix, PentagonAtMinusOne) {
    const GramFamily fam(preset_graph("cycle(5)"));
    const auto m = gram_matrix(fam, Rational(-1));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            const std::size_t d = (j + 5 - i) % 5;
            const Rational expected = i == j ? Rational(1) : (d == 1 || d == 4 ? Rational(0) : Rational(-1));
            EXPECT_EQ(m(i, j), expected);
        }
}

TEST(Reflection, FreeThreeFirstGenerator) {
    const GramFamily fam(preset_graph("free(3)"));
    const auto g = reflection_matrix(fam, 0, minus_two);
    EXPECT_EQ(g, (RationalMatrix{{-1, 4, 4}, {0, 1, 0}, {0, 0, 1}}));
    EXPECT_EQ(g * g, RationalMatrix::identity(3));
}

TEST(Reflection, PentagonAdjacentCommute) {
    const GramFamily fam(preset_graph("cycle(5)"));
    const Rational t(-13, 7);
    const auto g1 = reflection_matrix(fam, 0, t), g2 = reflection_matrix(fam, 1, t);
    EXPECT_EQ(g1 * g2, g2 * g1);
    EXPECT_NE(g1 * reflection_matrix(fam, 2, t), reflection_matrix(fam, 2, t) * g1);
}

TEST(Reflection, ExactRelationSuite) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> ks(3, 7);
        const GramFamily fam(testgen::random_graph(rng, ks(rng)));
        const Rational t = testgen::random_rational(rng, -5, -1);
        const auto m = gram_matrix(fam, t);
        std::vector<RationalMatrix> g;
        for (int i = 0; i < fam.k(); ++i) g.push_back(reflection_matrix(fam, i, t));
        const auto id = RationalMatrix::identity(static_cast<std::size_t>(fam.k()));
        for (int i = 0; i < fam.k(); ++i) {
            const auto& gi = g[static_cast<std::size_t>(i)];
            ASSERT_EQ(gi * gi, id);
            ASSERT_EQ(gi.transpose() * m * gi, m);
            for (int j = 0; j < fam.k(); ++j) {
                if (i == j || !fam.graph.commute(i, j)) continue;
                const auto p = gi * g[static_cast<std::size_t>(j)];
                ASSERT_EQ(p * p, id);
            }
        }
    }
}

TEST(Represent, IdentityAndInverse) {
    std::mt19937_64 rng(32);
    const GramFamily fam(preset_graph("cycle(5)"));
    const DeformedRep rep(fam, Rational(-5, 2));
    EXPECT_EQ(rep.represent({}), RationalMatrix::identity(5));
    for (int trial = 0; trial < 100; ++trial) {
        const Word w = testgen::random_word(rng, 5, 8);
        EXPECT_EQ(rep.represent(concat(w, inverse(w))), RationalMatrix::identity(5));
        EXPECT_EQ(rep.represent(w), represent(fam, w, Rational(-5, 2)));
    }
}

TEST(Represent, DependsOnlyOnNormalForm) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        const GramFamily fam(testgen::random_graph(rng, 3 + trial % 4));
        const Rational t = testgen::random_rational(rng, -5, -1);
        Word w = testgen::random_word(rng, fam.k(), 8);
        // An equal word: insert a cancelling pair and commute where possible.
        Word v = w;
        std::uniform_int_distribution<int> letter(0, fam.k() - 1);
        const int s = letter(rng);
        v.insert(v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2), {s, s});
        for (std::size_t i = 0; i + 1 < v.size(); i += 2)
            if (fam.graph.commute(v[i], v[i + 1])) std::swap(v[i], v[i + 1]);
        ASSERT_EQ(normal_form(fam.graph, w), normal_form(fam.graph, v));
        EXPECT_EQ(represent(fam, w, t), represent(fam, v, t));
        EXPECT_EQ(represent(fam, w, t), represent(fam, normal_form(fam.graph, w), t));
    }
}

TEST(Represent, FreeThreeProductIsProximal) {
    const GramFamily fam(preset_graph("free(3)"));
    const auto m = to_eigen(represent(fam, {0, 1}, minus_two));
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    std::vector<double> mods;
    for (int i = 0; i < 3; ++i) mods.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(mods.rbegin(), mods.rend());
    EXPECT_GT(std::log(mods[0]) - std::log(mods[1]), 1e-3);
}

TEST(RepresentDual, IdentityAndGenerator) {
    const GramFamily fam(preset_graph("free(3)"));
    const auto id = represent_dual(fam, {}, minus_two);
    EXPECT_EQ(id.value, RationalMatrix::identity(3));
    EXPECT_TRUE(id.deriv.is_zero());
    const auto g = represent_dual(fam, {1}, minus_two);
    // d/dt (Id - 2 e_2 row_2(Id + tN)) = -2 e_2 row_2(N)
    EXPECT_EQ(g.deriv, (RationalMatrix{{0, 0, 0}, {-2, 0, -2}, {0, 0, 0}}));
}

TEST(RepresentDual, ProductRuleAndFiniteDifferences) {
    std::mt19937_64 rng(34);
    const GramFamily fam(preset_graph("cycle(6)"));
    const Rational t(-9, 4);
    const DeformedRep rep(fam, t);
    for (int trial = 0; trial < 50; ++trial) {
        const Word a = testgen::random_word(rng, 6, 6), b = testgen::random_word(rng, 6, 6);
        const auto da = rep.represent_dual(a), db = rep.represent_dual(b);
        const auto dab = rep.represent_dual(concat(a, b));
        EXPECT_EQ(dab.deriv, da.deriv * db.value + da.value * db.deriv);
        EXPECT_EQ(dab, represent_dual(fam, concat(a, b), t));

        // Central finite difference with an exact rational step.
        const Rational h(1, 1000000);
        const auto fd = (represent(fam, a, t + h) - represent(fam, a, t - h)) * (Rational(1) / (Rational(2) * h));
        const Eigen::MatrixXd exact = to_eigen(da.deriv), approx = to_eigen(fd);
        EXPECT_LE((exact - approx).norm(), 1e-6 * std::max(1.0, exact.norm()));
    }
}

TEST(FloatRep, AgreesWithExact) {
    std::mt19937_64 rng(35);
    const GramFamily fam(preset_graph("cycle(5)"));
    const Rational t(-5, 2);
    const DeformedRep rep(fam, t);
    const FloatRep frep(fam, t);
    for (int trial = 0; trial < 30; ++trial) {
        const Word w = testgen::random_word(rng, 5, 8);
        const auto d = rep.represent_dual(w);
        const auto [fv, fd] = frep.represent_dual(w);
        EXPECT_LE((to_eigen(d.value) - fv).norm(), 1e-9 * std::max(1.0, fv.norm()));
        EXPECT_LE((to_eigen(d.deriv) - fd).norm(), 1e-9 * std::max(1.0, fd.norm()));
    }
}

TEST(SignatureProfile, FreeThree) {
    const GramFamily fam(preset_graph("free(3)"));
    const auto prof = signature_profile(fam, Rational(-10), Rational(-1));
    EXPECT_TRUE(prof.exceptional.empty());
    ASSERT_EQ(prof.segments.size(), 1u);
    EXPECT_EQ(prof.segments[0].sig, (Inertia{2, 1, 0}));
}

TEST(SignatureProfile, Pentagon) {
    const GramFamily fam(preset_graph("cycle(5)"));
    const auto prof = signature_profile(fam, Rational(-10), Rational(-1));
    ASSERT_EQ(prof.exceptional.size(), 1u);
    EXPECT_LE(prof.exceptional[0].lo.to_double(), -std::numbers::phi);
    EXPECT_GE(prof.exceptional[0].hi.to_double(), -std::numbers::phi);
    EXPECT_NEAR(prof.exceptional[0].midpoint(), -std::numbers::phi, 1e-6);
    ASSERT_EQ(prof.segments.size(), 2u);
    EXPECT_EQ(prof.segments[0].sig, (Inertia{2, 3, 0}));
    EXPECT_EQ(prof.segments[1].sig, (Inertia{4, 1, 0}));
    const auto left = leftmost_segment(fam);
    EXPECT_TRUE(left.unbounded_below);
    EXPECT_EQ(left.sig, (Inertia{2, 3, 0}));
    EXPECT_TRUE(left.contains(Rational(-5, 2)));
    EXPECT_THROW(require_same_segment(fam, Rational(-2), Rational(-3, 2)), ConfigError);
    EXPECT_NO_THROW(require_same_segment(fam, Rational(-5, 2), Rational(-12, 5)));
}

TEST(SignatureProfile, ExactMatchesFloatAndShape) {
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 40; ++trial) {
        const GramFamily fam(testgen::random_irreducible_graph(rng, 3 + trial % 5));
        const auto prof = signature_profile(fam, Rational(-6), Rational(-1));
        for (const auto& seg : prof.segments) {
            EXPECT_EQ(seg.sig.positive + seg.sig.negative, fam.k());
            EXPECT_GE(seg.sig.positive, 1);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(gram_matrix(fam, seg.sample)));
            int pos = 0;
            for (int i = 0; i < fam.k(); ++i) pos += es.eigenvalues()(i) > 0;
            EXPECT_EQ(pos, seg.sig.positive);
        }
    }
}

TEST(Perron, FreeThreeAndPentagon) {
    for (const char* name : {"free(3)", "cycle(5)"}) {
        const GramFamily fam(preset_graph(name));
        const auto pd = perron(fam);
        EXPECT_NEAR(pd.lambda_pf, 2.0, 1e-12);
        const double c = 1.0 / std::sqrt(static_cast<double>(fam.k()));
        for (int i = 0; i < fam.k(); ++i) EXPECT_NEAR(pd.v_pf(i), c, 1e-12);
        EXPECT_LT(pd.residual, 1e-11);
        // <v_PF, e_i>_t < 0 at t = -2.
        const Eigen::VectorXd mv = to_eigen(gram_matrix(fam, minus_two)) * pd.v_pf;
        for (int i = 0; i < fam.k(); ++i) EXPECT_LT(mv(i), 0.0);
    }
}

TEST(Perron, BipartiteAndReducible) {
    // cycle(6) has a bipartite infinity graph: -lambda_pf is also an eigenvalue.
    const GramFamily fam(preset_graph("cycle(6)"));
    const auto pd = perron(fam);
    EXPECT_GE(pd.lambda_pf, std::sqrt(2.0) - pd.residual);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(fam.n));
    EXPECT_NEAR(pd.lambda_pf, es.eigenvalues().maxCoeff(), 1e-10);
    EXPECT_THROW(perron(GramFamily(preset_graph("complete2(4)"))), ConfigError);
}

TEST(DualVertices, Identity) {
    const GramFamily fam(preset_graph("free(3)"));
    const auto ev = dual_vertices(fam, minus_two);
    const auto m = gram_matrix(fam, minus_two);
    for (std::size_t i = 0; i < 3; ++i) {
        RationalVector target(3, Rational(0));
        target[i] = Rational(-1);
        EXPECT_EQ(m * ev[i], target);
    }
    const GramFamily zero(preset_graph("complete2(3)"));
    const auto ez = dual_vertices(zero, minus_two);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(ez[i][j], Rational(i == j ? -1 : 0));
    // det(Id - N) vanishes at t = -1/2 for free(3).
    EXPECT_THROW(dual_vertices(fam, Rational(-1, 2)), ConfigError);
}

TEST(DualVertices, RandomGraphs) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const GramFamily fam(testgen::random_graph(rng, 3 + trial % 4));
        const Rational t = testgen::random_rational(rng, -5, -1);
        if (det_polynomial(fam.n)(t).is_zero()) continue;
        EXPECT_NO_THROW(dual_vertices(fam, t));
    }
}
