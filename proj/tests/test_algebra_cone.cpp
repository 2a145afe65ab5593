#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "affine_torus/algebra_cone.hpp"
#include "affine_torus/error.hpp"
#include "affine_torus/etale_dev.hpp"
#include "test_support.hpp"

using namespace affine_torus;
using oracle::kPi;

namespace {

// Brute-force residual straight from the definition, written against a plain
// table rather than the library's product.
double brute_residual(const AlgebraProduct& s) {
    const Vec2 table[2][2] = {{s.c11, s.c12}, {s.c12, s.c22}};
    auto prod = [&](const Vec2& u, const Vec2& v) {
        Vec2 r{};
        const double uu[2] = {u.x, u.y}, vv[2] = {v.x, v.y};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r = r + table[i][j] * (uu[i] * vv[j]);
        return r;
    };
    const Vec2 e[2] = {{1, 0}, {0, 1}};
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const Vec2 d = prod(prod(e[i], e[j]), e[k]) - prod(e[i], prod(e[j], e[k]));
                worst = std::fmax(worst, std::hypot(d.x, d.y));
            }
    return worst;
}

// Structural classification by scanning directions u = (cos a, sin a), a ∈ [0, π).
// idempotent: S(u,u) ∥ u and nonzero (a root of the cubic form cross(u, S(u,u)));
// nilpotent: S(u,u) = 0; zero divisor: det L_u = 0 for some u.
Stratum structural_oracle(const AlgebraProduct& s) {
    const double scale = std::fmax(1e-300, max_abs(s));
    const int n = 20000;
    auto dir = [](double a) { return Vec2{std::cos(a), std::sin(a)}; };
    // rank of the image span by the 2x3 coefficient matrix Gram determinant
    const double g11 = dot(s.c11, s.c11) + dot(s.c12, s.c12) + dot(s.c22, s.c22);
    if (g11 < 1e-24) return Stratum::T;
    const double gxx = s.c11.x * s.c11.x + s.c12.x * s.c12.x + s.c22.x * s.c22.x;
    const double gyy = s.c11.y * s.c11.y + s.c12.y * s.c12.y + s.c22.y * s.c22.y;
    const double gxy = s.c11.x * s.c11.y + s.c12.x * s.c12.y + s.c22.x * s.c22.y;
    const bool rank2 = gxx * gyy - gxy * gxy > 1e-8 * g11 * g11;

    double min_sq = INFINITY;
    bool idempotent = false;
    double prev_c = 0.0;
    double min_det = INFINITY, max_det = -INFINITY;
    for (int i = 0; i <= n; ++i) {
        const double a = kPi * i / n;
        const Vec2 u = dir(a);
        const Vec2 q = s(u, u);
        min_sq = std::fmin(min_sq, norm(q));
        const double c = cross(u, q);
        if (i > 0 && (c == 0.0 || (c > 0) != (prev_c > 0))) {
            // refine the root of the cubic form and test S(u,u) ≠ 0 there
            double lo = kPi * (i - 1) / n, hi = a;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double cm = cross(dir(mid), s(dir(mid), dir(mid)));
                if ((cm > 0) == (prev_c > 0)) lo = mid; else hi = mid;
            }
            if (norm(s(dir(lo), dir(lo))) > 1e-6 * scale) idempotent = true;
        }
        prev_c = c;
        const double d = s.left(u).det();
        min_det = std::fmin(min_det, d);
        max_det = std::fmax(max_det, d);
    }
    const bool nilpotent = min_sq < 1e-3 * scale;
    if (!rank2) return idempotent ? Stratum::C2 : Stratum::D;
    if (nilpotent) return Stratum::C1;
    const bool zero_divisor = min_det <= 1e-9 * scale * scale && max_det >= -1e-9 * scale * scale ? min_det * max_det <= 0 : false;
    return zero_divisor ? Stratum::B : Stratum::A;
}

// Closure order of the orbit graph A→C1→D→T←C2←B, B→C1. With extra_c2_d the
// edge C2→D is added: the C2 orbit is {f⊗f⊗w : f(w) ≠ 0} and its closure
// contains f(w) = 0, which is D.
bool reachable(Stratum from, Stratum to, bool extra_c2_d = false) {
    std::multimap<Stratum, Stratum> edges{
        {Stratum::A, Stratum::C1}, {Stratum::C1, Stratum::D}, {Stratum::D, Stratum::T},
        {Stratum::B, Stratum::C2}, {Stratum::C2, Stratum::T}, {Stratum::B, Stratum::C1}};
    if (extra_c2_d) edges.insert({Stratum::C2, Stratum::D});
    if (from == to) return true;
    auto [b, e] = edges.equal_range(from);
    for (auto it = b; it != e; ++it)
        if (reachable(it->second, to, extra_c2_d)) return true;
    return false;
}

void expect_throws_code(ErrorCode code, const std::function<void()>& f) {
    try {
        f();
        ADD_FAILURE() << "no exception, expected " << to_string(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

const Vec2 z{0, 0}, e1{1, 0}, e2{0, 1};

}  // namespace

TEST(Residual, Examples) {
    EXPECT_EQ(associativity_residual(model_product(Stratum::T)), 0.0);
    EXPECT_EQ(associativity_residual({e1, e2, -e1}), 0.0);
    EXPECT_NEAR(associativity_residual({e1, z, e1}), 1.0, 1e-15);
}

TEST(Residual, MatchesBruteForceAndIsQuadratic) {
    oracle::Rng rng(41);
    for (int i = 0; i < 2000; ++i) {
        const AlgebraProduct s{rng.vec(-2, 2), rng.vec(-2, 2), rng.vec(-2, 2)};
        const double r = associativity_residual(s);
        EXPECT_NEAR(r, brute_residual(s), 1e-12);
        const double t = rng.uniform(-5, 5);
        EXPECT_NEAR(associativity_residual(s * t), t * t * r, 1e-11 * std::fmax(1.0, t * t * r));
    }
}

TEST(Residual, ModelsAreInConeAtEveryScale) {
    for (Stratum st : kAllStrata) {
        for (double t : {1e-6, 1e-2, 1.0, 1e2, 1e6}) {
            EXPECT_TRUE(in_cone(model_product(st) * t)) << to_string(st) << " " << t;
        }
    }
}

TEST(Complete, Examples) {
    EXPECT_TRUE(is_complete(model_product(Stratum::T)));
    EXPECT_TRUE(is_complete(model_product(Stratum::D)));
    EXPECT_FALSE(is_complete(model_product(Stratum::B)));
    expect_throws_code(ErrorCode::NotInCone, [] { is_complete({e1, z, e1}); });
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify_algebra(model_product(Stratum::T)), Stratum::T);
    EXPECT_EQ(classify_algebra({e1, e2, -e1}), Stratum::A);
    EXPECT_EQ(classify_algebra({z, z, e2}), Stratum::C2);
    for (Stratum st : kAllStrata) EXPECT_EQ(classify_algebra(model_product(st)), st);
    expect_throws_code(ErrorCode::NotInCone, [] { classify_algebra({e1, z, e1}); });
}

TEST(Classify, StructuralOracleOnModels) {
    for (Stratum st : kAllStrata) EXPECT_EQ(structural_oracle(model_product(st)), st) << to_string(st);
}

TEST(Classify, OrbitInvariance) {
    // 1000 random basis changes per model type, condition number up to 1e3
    oracle::Rng rng(42);
    for (Stratum st : kAllStrata) {
        int failures = 0;
        for (int i = 0; i < 1000; ++i) {
            const Mat2 g = rng.conditioned(1e3) * rng.uniform(0.2, 5.0);
            const AlgebraProduct s = act(g, model_product(st));
            ASSERT_TRUE(in_cone(s));
            if (classify_algebra(s) != st) ++failures;
        }
        EXPECT_EQ(failures, 0) << to_string(st);
    }
}

TEST(Classify, AgreesWithStructuralOracleOnOrbits) {
    oracle::Rng rng(43);
    for (Stratum st : kAllStrata) {
        for (int i = 0; i < 60; ++i) {
            const AlgebraProduct s = act(rng.conditioned(10.0), model_product(st));
            EXPECT_EQ(classify_algebra(s), structural_oracle(s)) << to_string(st) << " " << i;
        }
    }
}

TEST(Classify, DegenerateRankBand) {
    // B with a tiny idempotent direction: second singular value ε
    EXPECT_EQ(classify_algebra({e1 * 1e-13, z, e2}), Stratum::C2);
    EXPECT_EQ(classify_algebra({e1 * 1e-8, z, e2}), Stratum::B);
    expect_throws_code(ErrorCode::DegenerateRank, [] { classify_algebra({e1 * 1e-10, z, e2}); });
}

TEST(Complete, IffTypeTOrD) {
    oracle::Rng rng(44);
    for (Stratum st : kAllStrata) {
        for (int i = 0; i < 200; ++i) {
            const AlgebraProduct s = act(rng.conditioned(100.0), model_product(st));
            EXPECT_EQ(is_complete(s), st == Stratum::T || st == Stratum::D) << to_string(st);
        }
    }
}

TEST(Act, Examples) {
    oracle::Rng rng(45);
    for (int i = 0; i < 100; ++i) {
        const AlgebraProduct s{rng.vec(-2, 2), rng.vec(-2, 2), rng.vec(-2, 2)};
        EXPECT_LT(max_abs(act(Mat2::identity(), s) - s), 1e-15);
        const double t = rng.uniform(0.1, 10);
        EXPECT_LT(max_abs(act(Mat2::scalar(t), s) - s * (1.0 / t)), 1e-13);
    }
    expect_throws_code(ErrorCode::SingularMatrix, [] { act(Mat2{1, 2, 2, 4}, model_product(Stratum::A)); });
}

TEST(Act, GroupActionAndResidualPreservation) {
    oracle::Rng rng(46);
    for (int i = 0; i < 1000; ++i) {
        const Mat2 g = rng.conditioned(30.0), h = rng.conditioned(30.0);
        const AlgebraProduct s = model_product(kAllStrata[i % 6]);
        const AlgebraProduct l = act(g * h, s), r = act(g, act(h, s));
        EXPECT_LT(max_abs(l - r), 1e-10 * std::fmax(1.0, max_abs(l)));
        const double c = condition_number(g);
        EXPECT_LT(associativity_residual(act(g, s)), 1e-9 * c * c);
        // pointwise definition
        const Vec2 u = rng.vec(-1, 1), v = rng.vec(-1, 1);
        const Mat2 gi = g.inverse();
        const Vec2 want = g * s(gi * u, gi * v);
        EXPECT_LT(norm(act(g, s)(u, v) - want), 1e-10 * std::fmax(1.0, norm(want)));
    }
}

TEST(ModelProduct, MatchesDerivativeOfModelGroups) {
    // Differentiate w ↦ T_{−b}·g(w)·T_b at w = 0: the linear part must be L_v where
    // v is the translation part. Parametrizations adapted so that v = w.
    const double h = 1e-5;
    auto conj = [](Stratum st, double w1, double w2) {
        const Vec2 b = base_point(st);
        AffineMap2 g;
        switch (st) {
        case Stratum::T: g = model_group_element(st, w1, w2); break;
        case Stratum::D: g = model_group_element(st, w1, w2); break;
        case Stratum::C1: g = model_group_element(st, w2, w1); break;
        case Stratum::C2: g = model_group_element(st, w1, w2); break;
        case Stratum::B: g = model_group_element(st, std::exp(w1), std::exp(w2)); break;
        case Stratum::A: g = model_group_element(st, w1, -w2); break;
        }
        return AffineMap2::translate(-b) * g * AffineMap2::translate(b);
    };
    for (Stratum st : kAllStrata) {
        const AlgebraProduct s = model_product(st);
        for (int k = 0; k < 2; ++k) {
            const double w1 = k == 0 ? h : 0.0, w2 = k == 1 ? h : 0.0;
            const AffineMap2 p = conj(st, w1, w2), m = conj(st, -w1, -w2);
            const Mat2 dl = (p.linear - m.linear) * (1.0 / (2 * h));
            const Vec2 dv = (p.translation - m.translation) * (1.0 / (2 * h));
            EXPECT_LT(norm(dv - Vec2{k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0}), 1e-8) << to_string(st);
            EXPECT_LT(max_abs(dl - s.left(dv)), 1e-8) << to_string(st) << " k=" << k;
        }
    }
}

TEST(OneParam, GroupLaw) {
    oracle::Rng rng(47);
    for (int i = 0; i < 200; ++i) {
        const OneParamSubgroup l{rng.matrix(-1, 1)};
        EXPECT_LT(max_abs(l.at(1.0) - Mat2::identity()), 1e-15);
        const double s = rng.uniform(0.1, 10), t = rng.uniform(0.1, 10);
        const Mat2 a = l.at(s * t), b = l.at(s) * l.at(t);
        EXPECT_LT(max_abs(a - b), 1e-12 * std::fmax(1.0, max_abs(a)));
    }
}

TEST(OneParam, Parse) {
    EXPECT_EQ(parse_subgroup("t*E").X, Mat2::identity());
    EXPECT_EQ(parse_subgroup("diag(t,1)").X, Mat2::diag(1, 0));
    EXPECT_EQ(parse_subgroup("diag(t^2, t)").X, Mat2::diag(2, 1));
    EXPECT_EQ(parse_subgroup("diag(1,t^-1)").X, Mat2::diag(0, -1));
    expect_throws_code(ErrorCode::InvalidParams, [] { parse_subgroup("rot(t)"); });
}

TEST(Degenerate, Examples) {
    oracle::Rng rng(48);
    for (Stratum st : kAllStrata) {
        const AlgebraProduct s = act(rng.conditioned(5.0), model_product(st));
        const auto r = degenerate(s, OneParamSubgroup::dilation());
        ASSERT_TRUE(std::holds_alternative<AlgebraProduct>(r));
        EXPECT_EQ(classify_algebra(std::get<AlgebraProduct>(r)), Stratum::T);
    }
    const auto b = degenerate(model_product(Stratum::B), parse_subgroup("diag(t,1)"));
    ASSERT_TRUE(std::holds_alternative<AlgebraProduct>(b));
    EXPECT_LT(max_abs(std::get<AlgebraProduct>(b) - model_product(Stratum::C2)), 1e-12);

    const auto a = degenerate(model_product(Stratum::A), parse_subgroup("diag(1,t)"));
    ASSERT_TRUE(std::holds_alternative<AlgebraProduct>(a));
    const AlgebraProduct la = std::get<AlgebraProduct>(a);
    EXPECT_EQ(classify_algebra(la), Stratum::C1);
    // the unit survives, e2² → 0
    EXPECT_LT(norm(la.c11 - e1), 1e-12);
    EXPECT_LT(norm(la.c12 - e2), 1e-12);
    EXPECT_LT(norm(la.c22), 1e-12);
}

TEST(Degenerate, CoefficientwiseOracle) {
    // act(diag(t^a, t^b), S) scales each coefficient by an explicit power of t
    oracle::Rng rng(49);
    for (int i = 0; i < 200; ++i) {
        const Stratum st = kAllStrata[i % 6];
        const AlgebraProduct s = act(rng.conditioned(4.0), model_product(st));
        const double pa = rng.integer(-1, 2), pb = rng.integer(-1, 2);
        // coefficient c_ij^k gets t^(p_k − p_i − p_j)
        const double p[2] = {pa, pb};
        const Vec2 cs[3] = {s.c11, s.c12, s.c22};
        const int ij[3][2] = {{0, 0}, {0, 1}, {1, 1}};
        bool diverges = false;
        AlgebraProduct want{};
        Vec2* out[3] = {&want.c11, &want.c12, &want.c22};
        for (int c = 0; c < 3; ++c) {
            const double comp[2] = {cs[c].x, cs[c].y};
            double res[2] = {0, 0};
            for (int k = 0; k < 2; ++k) {
                const double e = p[k] - p[ij[c][0]] - p[ij[c][1]];
                if (std::fabs(comp[k]) < 1e-14) continue;
                if (e > 0) diverges = true;
                if (e == 0) res[k] = comp[k];
            }
            *out[c] = {res[0], res[1]};
        }
        const auto r = degenerate(s, OneParamSubgroup::diag(pa, pb));
        if (diverges) {
            EXPECT_TRUE(std::holds_alternative<Divergent>(r)) << i;
        } else {
            ASSERT_TRUE(std::holds_alternative<AlgebraProduct>(r))
                << i << " " << pa << "," << pb << " " << to_string(st) << " " << std::get<Divergent>(r).reason;
            EXPECT_LT(max_abs(std::get<AlgebraProduct>(r) - want), 1e-6 * std::fmax(1.0, max_abs(want))) << i;
        }
    }
}

TEST(Degenerate, DivergentExample) {
    const auto r = degenerate(model_product(Stratum::C2), parse_subgroup("diag(1,t^-1)"));
    EXPECT_TRUE(std::holds_alternative<Divergent>(r));
}

TEST(Degenerate, LibraryRespectsPartialOrder) {
    const auto lib = degeneration_library();
    std::set<std::pair<Stratum, Stratum>> seen;
    for (const auto& e : lib) {
        ASSERT_EQ(classify_algebra(e.source), e.from);
        const auto r = degenerate(e.source, parse_subgroup(e.subgroup_text));
        ASSERT_TRUE(std::holds_alternative<AlgebraProduct>(r)) << e.subgroup_text;
        const Stratum to = classify_algebra(std::get<AlgebraProduct>(r));
        EXPECT_EQ(to, e.to) << to_string(e.from) << " via " << e.subgroup_text;
        EXPECT_TRUE(reachable(e.from, to));
        seen.insert({e.from, e.to});
    }
    EXPECT_EQ(seen.size(), 6u);
}

TEST(Degenerate, C2AlsoDegeneratesToD) {
    // e2·e2 = e1 + e2 is C2 (idempotent e1 + e2); diag(t², t) sends it to e1 + e2/t
    const AlgebraProduct s{z, z, e1 + e2};
    ASSERT_EQ(classify_algebra(s), Stratum::C2);
    const auto r = degenerate(s, parse_subgroup("diag(t^2,t)"));
    ASSERT_TRUE(std::holds_alternative<AlgebraProduct>(r));
    EXPECT_LT(max_abs(std::get<AlgebraProduct>(r) - model_product(Stratum::D)), 1e-12);
    EXPECT_FALSE(reachable(Stratum::C2, Stratum::D));
}

TEST(Degenerate, RandomDiagonalFlowsStayInClosure) {
    oracle::Rng rng(50);
    for (int i = 0; i < 600; ++i) {
        const Stratum st = kAllStrata[i % 6];
        const Mat2 g = rng.conditioned(3.0);
        const AlgebraProduct s = act(g, model_product(st));
        const auto r = degenerate(s, OneParamSubgroup::diag(rng.integer(-1, 2), rng.integer(-1, 2)));
        if (!std::holds_alternative<AlgebraProduct>(r)) continue;
        try {
            EXPECT_TRUE(reachable(st, classify_algebra(std::get<AlgebraProduct>(r)), true)) << i;
        } catch (const Error& e) {
            EXPECT_TRUE(is_numeric_degeneracy(e.code())) << e.what();
        }
    }
}
