#include <gtest/gtest.h>

#include <functional>

#include "affine_torus/error.hpp"
#include "affine_torus/gl2cover.hpp"
#include "affine_torus/theta_suite.hpp"
#include "test_support.hpp"

using namespace affine_torus;
using oracle::kPi;

namespace {

// Gram–Schmidt on the columns: m = Q·U with U upper triangular, positive diagonal.
IwasawaFactors gram_schmidt(const Mat2& m) {
    const Vec2 c1 = m.col1(), c2 = m.col2();
    const double r11 = norm(c1);
    const Vec2 q1 = c1 * (1.0 / r11);
    const double r12 = dot(q1, c2);
    const Vec2 w = c2 - q1 * r12;
    const double r22 = norm(w);
    // Q = K(θ) with first column (cos θ, −sin θ)
    return {std::atan2(-q1.y, q1.x), r11, r22, r12 / r11};
}

void expect_throws_code(ErrorCode code, const std::function<void()>& f) {
    try {
        f();
        ADD_FAILURE() << "no exception, expected " << to_string(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

}  // namespace

TEST(Iwasawa, Examples) {
    const auto id = iwasawa(Mat2::identity());
    EXPECT_EQ(id.theta0, 0.0);
    EXPECT_EQ(id.a1, 1.0);
    EXPECT_EQ(id.a2, 1.0);
    EXPECT_EQ(id.n12, 0.0);

    const auto q = iwasawa(Mat2{0, 1, -1, 0});
    EXPECT_NEAR(q.theta0, kPi / 2, 1e-15);
    EXPECT_NEAR(q.a1, 1.0, 1e-15);
    EXPECT_NEAR(q.a2, 1.0, 1e-15);
    EXPECT_NEAR(q.n12, 0.0, 1e-15);

    const auto u = iwasawa(Mat2{1, 1, 0, 2});
    const auto gs = gram_schmidt(Mat2{1, 1, 0, 2});
    EXPECT_NEAR(u.theta0, gs.theta0, 1e-15);
    EXPECT_NEAR(u.a1, 1.0, 1e-15);
    EXPECT_NEAR(u.a2, 2.0, 1e-15);
    EXPECT_NEAR(u.n12, 1.0, 1e-15);

    EXPECT_NEAR(iwasawa(-Mat2::identity()).theta0, kPi, 0.0);
}

TEST(Iwasawa, AgreesWithGramSchmidtAndReconstructs) {
    oracle::Rng rng(21);
    for (int i = 0; i < 5000; ++i) {
        const Mat2 m = rng.glplus();
        const auto f = iwasawa(m);
        const auto g = gram_schmidt(m);
        EXPECT_GT(f.theta0, -kPi);
        EXPECT_LE(f.theta0, kPi);
        EXPECT_NEAR(f.theta0, g.theta0, 1e-12);
        EXPECT_NEAR(f.a1, g.a1, 1e-12 * g.a1);
        EXPECT_NEAR(f.a2, g.a2, 1e-9 * std::fmax(1.0, g.a2));
        EXPECT_LT(max_abs(reconstruct(f) - m), 1e-12 * frobenius(m));
    }
}

TEST(Iwasawa, RejectsNonPositiveDeterminant) {
    expect_throws_code(ErrorCode::NonPositiveDeterminant, [] { iwasawa(Mat2::diag(1, -1)); });
    expect_throws_code(ErrorCode::NonPositiveDeterminant, [] { lift(Mat2{1, 2, 2, 4}, 0); });
}

TEST(Lift, TauAndKernel) {
    EXPECT_EQ(lift(Mat2::identity(), 0).theta, 0.0);
    EXPECT_NEAR(lift(Mat2::identity(), 1).theta, 2 * kPi, 1e-15);
    EXPECT_NEAR(tau().theta, kPi, 0.0);
    EXPECT_EQ(tau().m, -Mat2::identity());
    const auto t2 = mul(tau(), tau());
    EXPECT_NEAR(t2.theta, 2 * kPi, 1e-14);
    EXPECT_LT(max_abs(t2.m - Mat2::identity()), 1e-15);
    for (int m = -5; m <= 5; ++m) EXPECT_NEAR(pow(tau(), m).theta, m * kPi, 1e-12);
}

TEST(Mul, Examples) {
    const auto q = lift(K(kPi / 2), 0);
    const auto qq = mul(q, q);
    EXPECT_LT(max_abs(qq.m + Mat2::identity()), 1e-15);
    EXPECT_NEAR(qq.theta, kPi, 1e-15);
    EXPECT_NEAR(mul(lift(Mat2::identity(), 1), lift(Mat2::identity(), 1)).theta, 4 * kPi, 1e-14);
}

TEST(Mul, MatchesPathLiftingOracle) {
    oracle::Rng rng(22);
    for (int i = 0; i < 1000; ++i) {
        const auto g = rng.lift(), h = rng.lift();
        ASSERT_NEAR(mul(g, h).theta, oracle::path_lifted_product_theta(g, h), 1e-6) << "pair " << i;
    }
}

TEST(Mul, GroupLaws) {
    oracle::Rng rng(23);
    for (int i = 0; i < 2000; ++i) {
        const auto a = rng.lift(), b = rng.lift(), c = rng.lift();
        const auto l = mul(mul(a, b), c), r = mul(a, mul(b, c));
        EXPECT_NEAR(l.theta, r.theta, 1e-10);
        EXPECT_LT(max_abs(l.m - r.m), 1e-10 * std::fmax(1.0, frobenius(l.m)));
        const auto e1 = mul(a, inv(a)), e2 = mul(inv(a), a);
        EXPECT_NEAR(e1.theta, 0.0, 1e-10);
        EXPECT_NEAR(e2.theta, 0.0, 1e-10);
        EXPECT_LT(max_abs(e1.m - Mat2::identity()), 1e-10 * condition_number(a.m));
        EXPECT_EQ(mul(a, b).m, a.m * b.m);
    }
}

TEST(Mul, CorruptedLiftSignalsBranchAmbiguity) {
    // θ = π over the identity is not a lift; the product lands on the branch boundary
    const GLTildeElement bad{Mat2::identity(), kPi};
    expect_throws_code(ErrorCode::BranchAmbiguity, [&] { mul(bad, lift(Mat2::identity(), 0)); });
}

TEST(Pow, AgreesWithRepeatedMultiplication) {
    oracle::Rng rng(24);
    for (int i = 0; i < 200; ++i) {
        const auto g = lift(rng.glplus() * 0.5, rng.integer(-1, 1));
        GLTildeElement acc{Mat2::identity(), 0.0}, acc_inv = acc;
        for (int n = 1; n <= 6; ++n) {
            acc = mul(acc, g);
            acc_inv = mul(acc_inv, inv(g));
            EXPECT_NEAR(pow(g, n).theta, acc.theta, 1e-9);
            EXPECT_NEAR(pow(g, -n).theta, acc_inv.theta, 1e-9);
        }
    }
}

TEST(Level, Examples) {
    EXPECT_EQ(level(lift(Mat2::diag(2, 3), 0)), 0);
    EXPECT_EQ(level(lift(Mat2::diag(2, 3), 1)), 2);
    EXPECT_EQ(level(mul(tau(), lift(Mat2::diag(2, 3), 0))), 1);
    EXPECT_EQ(level(lift(Mat2{-2, 1, 0, -3}, 0)), 1);
    EXPECT_EQ(level(lift(Mat2{-2, 1, 0, -3}, -1)), -1);
    expect_throws_code(ErrorCode::NotTriangularizable, [] { level(lift(K(1.0), 0)); });
}

TEST(Level, ConjugationInvariantAndCentrallyAdditive) {
    oracle::Rng rng(25);
    int tested = 0;
    while (tested < 2000) {
        const auto g = rng.lift();
        if (eig2(g.m).tag == EigenClass2::Tag::Complex) continue;
        ++tested;
        const int l = level(g);
        const auto c = rng.lift();
        EXPECT_EQ(level(mul(mul(c, g), inv(c))), l);
        for (int k = -3; k <= 3; ++k) EXPECT_EQ(level(mul(tau_pow(k), g)), l + k);
    }
}

TEST(Level, EventuallyConstantAlongConvergingClasses) {
    // A_ε = [[λ, ε], [0, λ]] tends to the dilation; the level never moves.
    for (int k : {-2, 0, 1, 3}) {
        const int expected = level(lift(Mat2::scalar(2.0), k));
        EXPECT_EQ(expected, 2 * k);
        for (double eps = 1.0; eps > 1e-12; eps /= 10) {
            EXPECT_EQ(level(lift(Mat2{2.0, eps, 0.0, 2.0}, k)), expected) << eps;
        }
    }
}

TEST(Level, UnipotentLevelZeroFallsIntoThreeClasses) {
    oracle::Rng rng(26);
    const GLTildeElement reps[] = {lift(Mat2{1, 1, 0, 1}, 0), lift(Mat2{1, -1, 0, 1}, 0), lift(Mat2::identity(), 0)};
    for (int i = 0; i < 1000; ++i) {
        const double s = i % 3 == 2 ? 0.0 : (i % 3 == 0 ? 1 : -1) * rng.uniform(0.01, 5.0);
        const auto c = lift(rng.conditioned(20.0, false), 0);
        const auto g = mul(mul(c, lift(Mat2{1, s, 0, 1}, 0)), inv(c));
        ASSERT_EQ(level(g), 0);
        int hits = 0, which = -1;
        for (int r = 0; r < 3; ++r) {
            if (conjugate_in(g, reps[r], Group::GLtilde)) {
                ++hits;
                which = r;
            }
        }
        ASSERT_EQ(hits, 1) << "trial " << i;
        EXPECT_EQ(which, i % 3);
    }
}

TEST(ExpansionClass, Examples) {
    EXPECT_EQ(expansion_class(Mat2::diag(2, 3)), ExpandingClass::Expansion);
    EXPECT_EQ(expansion_class(Mat2::diag(2, 0.5)), ExpandingClass::NotExpanding);
    EXPECT_EQ(expansion_class(K(kPi / 3) * 2.0), ExpandingClass::ExpandingSpiral);
    EXPECT_EQ(expansion_class(Mat2::diag(-2, -3)), ExpandingClass::ExpansionTimesRpi);
    EXPECT_EQ(expansion_class(Mat2{1.5, 1, 0, 1.5}), ExpandingClass::Expansion);
    EXPECT_EQ(expansion_class(K(0.3) * 0.9), ExpandingClass::NotExpanding);
}

TEST(ExpansionClass, IterateOracle) {
    // expanding means every vector grows: σ_min(mⁿ) → ∞. Track log σ_min through
    // rescaled powers as n·log det − log σ_max.
    oracle::Rng rng(27);
    for (int i = 0; i < 300; ++i) {
        const Mat2 m = rng.glplus();
        const ExpandingClass c = expansion_class(m);
        const EigenClass2 e = eig2(m);
        const double small = e.tag == EigenClass2::Tag::Complex ? e.modulus : std::fabs(e.lambda2);
        if (std::fabs(small - 1.0) < 0.05) continue;
        Mat2 p = Mat2::identity();
        double log_scale = 0.0, log_smin = 0.0, log_smin_half = 0.0;
        for (int n = 1; n <= 400; ++n) {
            p = m * p;
            const double s = max_abs(p);
            p = p * (1.0 / s);
            log_scale += std::log(s);
            log_smin = n * std::log(m.det()) - (log_scale + std::log(singular_values(p).s1));
            if (n == 200) log_smin_half = log_smin;
        }
        // the asymptotic slope is log of the smaller modulus
        EXPECT_EQ(log_smin - log_smin_half > 0.0, c != ExpandingClass::NotExpanding)
            << "trial " << i << " m=" << m.m11 << "," << m.m12 << "," << m.m21 << "," << m.m22 << " log " << log_smin;
    }
}

TEST(NonzeroRotation, Examples) {
    EXPECT_FALSE(has_nonzero_rotation(lift(Mat2::diag(2, 3), 0)));
    EXPECT_TRUE(has_nonzero_rotation(mul(tau(), lift(Mat2::diag(2, 3), 0))));
    EXPECT_TRUE(has_nonzero_rotation(lift(K(1.0), 0)));
}

TEST(NonzeroRotation, IterateOracle) {
    // |θ(gⁿ)| stays below π for all n exactly when the rotation is zero. Positive
    // rescaling does not move θ, so the powers are kept normalized.
    oracle::Rng rng(28);
    for (int i = 0; i < 500; ++i) {
        const auto g = rng.lift();
        const EigenClass2 e = eig2(g.m);
        if (e.tag == EigenClass2::Tag::Complex && (e.angle < 0.06 || e.angle > kPi - 0.06)) continue;
        GLTildeElement acc;
        double maxabs = 0.0;
        for (int n = 1; n <= 60; ++n) {
            acc = mul(acc, g);
            acc.m = acc.m * (1.0 / std::sqrt(acc.m.det()));
            if (condition_number(acc.m) > 1e8) break;  // hyperbolic: real classes settle by n = 2
            maxabs = std::fmax(maxabs, std::fabs(acc.theta));
        }
        EXPECT_EQ(has_nonzero_rotation(g), maxabs >= kPi) << "trial " << i;
    }
}

TEST(Conjugacy, CpglExample) {
    const Mat2 gp{0.1, 1, -1, 0.1}, gm{-0.1, 1, -1, -0.1};
    EXPECT_TRUE(conjugate_in(gp, gm, Group::PGL));
    EXPECT_FALSE(conjugate_in(lift(gp, 0), lift(gm, 0), Group::GLtilde));
}

TEST(Conjugacy, JordanSignSeparatesGlplusClasses) {
    for (double lam : {0.5, 2.0}) {
        const Mat2 a{lam, 1, 0, lam}, b{lam, -1, 0, lam};
        EXPECT_FALSE(conjugate_in(a, b, Group::GLplus));
        EXPECT_TRUE(conjugate_in(a, b, Group::PGL));
    }
}

TEST(Conjugacy, JordanBruteForceOracle) {
    // c·[[λ,1],[0,λ]] = [[λ,−1],[0,λ]]·c forces c = [[a, b], [0, −a]], so det c = −a² ≤ 0.
    oracle::Rng rng(29);
    const Mat2 a{2, 1, 0, 2}, b{2, -1, 0, 2};
    for (int i = 0; i < 20000; ++i) {
        const Mat2 c = rng.matrix(-3, 3);
        if (c.det() <= 0) continue;
        EXPECT_GT(max_abs(c * a - b * c), 1e-6);
    }
}

TEST(Conjugacy, Reflexive) {
    oracle::Rng rng(30);
    for (int i = 0; i < 500; ++i) {
        const auto g = rng.lift();
        for (Group gr : {Group::GLplus, Group::GLtilde, Group::PGL}) {
            try {
                EXPECT_TRUE(conjugate_in(g, g, gr));
            } catch (const Error& e) {
                EXPECT_EQ(e.code(), ErrorCode::Degenerate);
            }
        }
    }
}

TEST(Conjugacy, RandomConjugatesPerClass) {
    oracle::Rng rng(31);
    const Mat2 reps[] = {Mat2::diag(2, 3), Mat2::diag(-1, -4), Mat2::scalar(1.5), Mat2{2, 1, 0, 2},
                         Mat2{2, -1, 0, 2}, R(0.7) * 1.3, K(2.5) * 0.4};
    for (const Mat2& m : reps) {
        for (int k = -2; k <= 2; ++k) {
            const auto g = lift(m, k);
            for (int i = 0; i < 200; ++i) {
                const auto c = lift(rng.conditioned(100.0, false), rng.integer(-2, 2));
                const auto h = mul(mul(c, g), inv(c));
                ASSERT_TRUE(conjugate_in(g, h, Group::GLtilde));
                ASSERT_TRUE(conjugate_in(g.m, h.m, Group::GLplus));
                ASSERT_FALSE(conjugate_in(g, mul(tau_pow(2), h), Group::GLtilde));
                const Mat2 r = rng.conditioned(100.0) * Mat2::diag(1, -1);
                ASSERT_TRUE(conjugate_in(g.m, -(r * g.m * r.inverse()), Group::PGL));
            }
        }
    }
}

TEST(Conjugacy, CentralizerConjugatorsKeepTheta) {
    // conjugating by elements commuting with g never changes the lift
    oracle::Rng rng(32);
    for (int i = 0; i < 500; ++i) {
        const auto g = rng.lift();
        const Mat2 z = Mat2::scalar(rng.uniform(-2, 2)) + g.m * rng.uniform(-2, 2);
        if (z.det() <= 1e-3) continue;
        const auto zt = lift(z, rng.integer(-2, 2));
        const auto h = mul(mul(zt, g), inv(zt));
        EXPECT_NEAR(h.theta, g.theta, 1e-9);
    }
}

TEST(Conjugacy, DegenerateBandIsReported) {
    // Δ/tr² ≈ 4e-9: just outside the repeated-real tolerance
    const Mat2 m{1.0 + 6.3e-5, 0.0, 0.0, 1.0 - 6.3e-5};
    expect_throws_code(ErrorCode::Degenerate, [&] { conjugate_in(m, m, Group::GLplus); });
}

TEST(ThetaAngle, SuitePasses) {
    const ThetaSuiteResult r = run_theta_suite(10000, 77);
    for (const auto& c : r.checks) {
        EXPECT_EQ(c.violations, 0) << c.name;
        if (c.min_margin > 0) EXPECT_GT(c.min_margin, 1e-9) << c.name;
    }
    EXPECT_GT(r.literal_inverse_violations, 0);
}

TEST(ThetaAngle, LiteralInverseBoundHasCounterexample) {
    // |θ(g) − θ(g⁻¹)| < π fails for a rotation by 2; the sum form holds
    const auto g = lifted_K(2.0);
    const auto gi = inv(g);
    EXPECT_NEAR(gi.theta, -2.0, 1e-12);
    EXPECT_GT(std::fabs(g.theta - gi.theta), kPi);
    EXPECT_LT(std::fabs(g.theta + gi.theta), kPi);
}

TEST(ThetaAngle, TriangularProjectionDoesNotForceZeroTheta) {
    // θ = 0 characterizes the identity sheet over AN, not the projection alone
    const auto g = lift(Mat2::diag(2, 3), 1);
    EXPECT_NEAR(g.theta, 2 * kPi, 1e-15);
    oracle::Rng rng(33);
    for (int i = 0; i < 1000; ++i) {
        const auto g0 = rng.lift();
        if (std::fabs(g0.theta) <= 1e-12) {
            EXPECT_EQ(g0.m.m21, 0.0);
            EXPECT_GT(g0.m.m11, 0.0);
        }
    }
}

TEST(KPhi, TraceDetAndRotationClass) {
    // X = R·M − M·k⁻¹ solves R·X = X·k for any M (both satisfy x² − 2cos φ·x + 1 = 0);
    // the sign of det X on that plane fixes the GL⁺ class
    oracle::Rng rng(34);
    for (double phi : {0.5, 0.1, 0.01, 1.0, 2.5}) {
        const Mat2 k = k_phi(phi);
        EXPECT_NEAR(k.trace(), 2 * std::cos(phi), 1e-12);
        EXPECT_NEAR(k.det(), 1.0, 1e-12);
        for (int i = 0; i < 20; ++i) {
            const Mat2 M = rng.matrix(-1, 1);
            const Mat2 X = R(phi) * M - M * k.inverse();
            EXPECT_LT(max_abs(R(phi) * X - X * k), 1e-12);
            if (frobenius(X) > 1e-3) EXPECT_GT(X.det(), 0.0);
        }
        EXPECT_TRUE(conjugate_in(k, R(phi), Group::GLplus));
        EXPECT_FALSE(conjugate_in(k, K(phi), Group::GLplus));
        EXPECT_TRUE(conjugate_in(k, K(phi), Group::PGL));
    }
    EXPECT_LT(max_abs(k_phi(1e-14) - Mat2{1, -1, 0, 1}), 1e-6);
    expect_throws_code(ErrorCode::InvalidParams, [] { k_phi(-0.5); });
}
