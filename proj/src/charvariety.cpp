#include "affine_torus/charvariety.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "affine_torus/error.hpp"

namespace affine_torus {

namespace {

constexpr double kTol = 1e-9;

bool is_scalar(const Mat2& m) { return eig2(m).tag == EigenClass2::Tag::RealRepeatedDiagonal; }

double scale_of(const Mat2& a, const Mat2& b) { return std::fmax(1.0, std::fmax(frobenius(a), frobenius(b))); }

void require_commuting(const Mat2& a, const Mat2& b) {
    if (max_abs(a * b - b * a) > kTol * std::fmax(1.0, frobenius(a) * frobenius(b))) {
        throw Error(ErrorCode::NonCommuting, "generator images do not commute");
    }
}

// c with det c > 0 and c·g_j·c⁻¹ = h_j for j = 1, 2.
bool simultaneous_glplus(const std::array<Mat2, 2>& g, const std::array<Mat2, 2>& h, Mat2& c) {
    int pivot = -1;
    for (int i = 0; i < 2; ++i) {
        if (!is_scalar(g[i])) {
            pivot = i;
            break;
        }
    }
    if (pivot < 0) {
        c = Mat2::identity();
        return max_abs(g[0] - h[0]) <= kTol * scale_of(g[0], h[0]) &&
               max_abs(g[1] - h[1]) <= kTol * scale_of(g[1], h[1]);
    }
    if (!glplus_conjugator(g[pivot], h[pivot], c)) return false;
    // The centralizer of a non-scalar element is abelian and contains the other
    // generator, so c is as good as any other choice.
    const int other = 1 - pivot;
    const double tol = kTol * scale_of(g[other], h[other]) * condition_number(c);
    return max_abs(c * g[other] * c.inverse() - h[other]) <= tol;
}

std::array<Mat2, 2> projections(const HomPoint& p) {
    if (const auto* l = std::get_if<LinearHom>(&p)) return {l->g1, l->g2};
    if (const auto* t = std::get_if<LiftHom>(&p)) return {t->g1.m, t->g2.m};
    throw Error(ErrorCode::InvalidParams, "affine pairs are compared in Aff only");
}

bool gltilde_conjugate(const LiftHom& a, const LiftHom& b) {
    Mat2 c;
    if (!simultaneous_glplus({a.g1.m, a.g2.m}, {b.g1.m, b.g2.m}, c)) return false;
    const GLTildeElement ct = lift(c, 0);
    const GLTildeElement ci = inv(ct);
    const double t1 = mul(mul(ct, a.g1), ci).theta;
    const double t2 = mul(mul(ct, a.g2), ci).theta;
    return std::fabs(t1 - b.g1.theta) <= 1e-6 && std::fabs(t2 - b.g2.theta) <= 1e-6;
}

const Mat2 kR = Mat2::diag(1.0, -1.0);

bool pgl_conjugate(const std::array<Mat2, 2>& g, const std::array<Mat2, 2>& h) {
    Mat2 c;
    for (bool reflect : {false, true}) {
        const std::array<Mat2, 2> gg = reflect ? std::array<Mat2, 2>{kR * g[0] * kR, kR * g[1] * kR} : g;
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0})
                if (simultaneous_glplus(gg, {h[0] * s1, h[1] * s2}, c)) return true;
    }
    return false;
}

// Solves C·t_j + (E − L'_j)·d = t'_j for an invertible C in c0·(centralizer).
bool affine_translation_solve(const HolonomyPair& g, const HolonomyPair& h, const Mat2& c0) {
    const std::array<AffineMap2, 2> gs{g.h1, g.h2}, hs{h.h1, h.h2};
    int pivot = -1;
    for (int i = 0; i < 2; ++i) {
        if (!is_scalar(gs[i].linear)) {
            pivot = i;
            break;
        }
    }
    const int n = pivot >= 0 ? 4 : 6;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4, n);
    Eigen::VectorXd b(4);
    for (int j = 0; j < 2; ++j) {
        const Vec2 t = gs[j].translation;
        const Mat2 id_minus = Mat2::identity() - hs[j].linear;
        const int r = 2 * j;
        if (pivot >= 0) {
            const Vec2 ct = c0 * t;
            const Vec2 cmt = c0 * (gs[pivot].linear * t);
            A(r, 0) = ct.x, A(r + 1, 0) = ct.y;
            A(r, 1) = cmt.x, A(r + 1, 1) = cmt.y;
        } else {
            A(r, 0) = t.x, A(r, 1) = t.y;
            A(r + 1, 2) = t.x, A(r + 1, 3) = t.y;
        }
        A(r, n - 2) = id_minus.m11, A(r, n - 1) = id_minus.m12;
        A(r + 1, n - 2) = id_minus.m21, A(r + 1, n - 1) = id_minus.m22;
        b(r) = hs[j].translation.x;
        b(r + 1) = hs[j].translation.y;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    svd.setThreshold(kTol);
    const Eigen::VectorXd x0 = svd.solve(b);
    const double scale = std::fmax(1.0, std::fmax(b.norm(), smax * x0.norm()));
    if ((A * x0 - b).norm() > 1e-8 * scale) return false;

    const int rank = static_cast<int>(svd.rank());
    const Eigen::MatrixXd null = svd.matrixV().rightCols(n - rank);
    auto linear_part = [&](const Eigen::VectorXd& x) {
        if (pivot >= 0) return c0 * (Mat2::scalar(x(0)) + gs[pivot].linear * x(1));
        return Mat2{x(0), x(1), x(2), x(3)};
    };
    // The solution set is x0 + null·y; det C is a polynomial on it, so a few
    // generic points decide whether it vanishes identically.
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> nd;
    const double spread = std::fmax(1.0, x0.norm());
    for (int trial = 0; trial < 8; ++trial) {
        Eigen::VectorXd x = x0;
        if (trial > 0 && null.cols() > 0) {
            Eigen::VectorXd y(null.cols());
            for (int k = 0; k < y.size(); ++k) y(k) = nd(rng) * spread;
            x += null * y;
        }
        const Mat2 C = linear_part(x);
        const double f = frobenius(C);
        if (f > 0.0 && std::fabs(C.det()) > 1e-9 * f * f) return true;
    }
    return false;
}

bool aff_conjugate(const HolonomyPair& g, const HolonomyPair& h) {
    for (bool reflect : {false, true}) {
        HolonomyPair gg = g;
        if (reflect) {
            const AffineMap2 r{kR, {}};
            gg = {r * g.h1 * r, r * g.h2 * r};
        }
        Mat2 c0;
        if (!simultaneous_glplus({gg.h1.linear, gg.h2.linear}, {h.h1.linear, h.h2.linear}, c0)) continue;
        if (affine_translation_solve(gg, h, c0)) return true;
    }
    return false;
}

}  // namespace

const char* to_string(HomGroup g) {
    switch (g) {
    case HomGroup::GLplus: return "glplus";
    case HomGroup::GLtilde: return "gltilde";
    case HomGroup::PGL: return "pgl";
    case HomGroup::Aff: return "aff";
    }
    return "?";
}

HomGroup hom_group_from_string(const std::string& s) {
    for (HomGroup g : {HomGroup::GLplus, HomGroup::GLtilde, HomGroup::PGL, HomGroup::Aff}) {
        if (s == to_string(g)) return g;
    }
    throw Error(ErrorCode::InvalidParams, "unknown group '" + s + "'");
}

bool hom_conjugate_in(const HomPoint& a, const HomPoint& b, HomGroup group) {
    if (group == HomGroup::Aff) {
        const auto* ga = std::get_if<HolonomyPair>(&a);
        const auto* gb = std::get_if<HolonomyPair>(&b);
        if (!ga || !gb) throw Error(ErrorCode::InvalidParams, "Aff conjugacy needs affine pairs");
        const double sa = std::fmax(1.0, std::fmax(max_abs(ga->h1.linear), max_abs(ga->h2.linear)));
        const double sb = std::fmax(1.0, std::fmax(max_abs(gb->h1.linear), max_abs(gb->h2.linear)));
        if (commutator_residual(*ga) > kTol * sa || commutator_residual(*gb) > kTol * sb) {
            throw Error(ErrorCode::NonCommuting, "generator images do not commute");
        }
        return aff_conjugate(*ga, *gb);
    }
    if (group == HomGroup::GLtilde) {
        const auto* la = std::get_if<LiftHom>(&a);
        const auto* lb = std::get_if<LiftHom>(&b);
        if (!la || !lb) throw Error(ErrorCode::InvalidParams, "GLtilde conjugacy needs lifts");
        require_commuting(la->g1.m, la->g2.m);
        require_commuting(lb->g1.m, lb->g2.m);
        return gltilde_conjugate(*la, *lb);
    }
    const auto g = projections(a);
    const auto h = projections(b);
    require_commuting(g[0], g[1]);
    require_commuting(h[0], h[1]);
    if (group == HomGroup::PGL) return pgl_conjugate(g, h);
    Mat2 c;
    return simultaneous_glplus(g, h, c);
}

double hom_distance(const LinearHom& a, const LinearHom& b) {
    return std::fmax(frobenius(a.g1 - b.g1), frobenius(a.g2 - b.g2));
}

NonclosedWitness nonclosed_witness(double lambda, double t) {
    const Mat2 c = Mat2::diag(1.0, t);
    const Mat2 a1{lambda, 1.0, 0.0, lambda};
    NonclosedWitness w;
    w.conjugated = {Mat2::scalar(lambda), c * a1 * c.inverse()};
    w.rho0 = {Mat2::scalar(lambda), Mat2::scalar(lambda)};
    w.distance_to_rho0 = hom_distance(w.conjugated, w.rho0);
    return w;
}

BranchedWitness branched_witness(double a, double eps) {
    if (a == 0.0) throw Error(ErrorCode::InvalidParams, "a must be non-zero");
    const Mat2 gp{eps, a, -a, eps};
    const Mat2 gm{-eps, a, -a, -eps};
    BranchedWitness w;
    w.pgl_equal = conjugate_in(gp, gm, Group::PGL);
    w.gltilde_equal = conjugate_in(lift(gp, 0), lift(gm, 0), Group::GLtilde);
    return w;
}

namespace {

Mat2 random_conditioned(std::mt19937_64& rng, double max_cond) {
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> sig(1.0, max_cond);
    std::bernoulli_distribution flip(0.5);
    Mat2 g = K(ang(rng)) * Mat2::diag(sig(rng), 1.0) * K(ang(rng));
    if (flip(rng)) g = g * kR;
    return g;
}

double non_scalar_measure(const Mat2& m) {
    const double h = m.trace() / 2.0;
    return max_abs(m - Mat2::scalar(h)) / std::fmax(1.0, std::fabs(h));
}

// Limits of the library degenerations, keyed by target stratum.
struct CrossEdge {
    DegenerationEdge edge;
    AlgebraProduct limit;
};

std::vector<CrossEdge> cross_edges() {
    std::vector<CrossEdge> out;
    for (const auto& e : degeneration_library()) {
        const auto lim = degenerate(e.source, e.subgroup);
        if (const auto* p = std::get_if<AlgebraProduct>(&lim)) out.push_back({e, *p});
    }
    return out;
}

}  // namespace

ProbeResult local_injectivity_probe(int samples, double radius, std::uint64_t seed) {
    if (samples <= 0) throw Error(ErrorCode::InvalidParams, "samples must be positive");
    if (!(radius >= 0.0)) throw Error(ErrorCode::InvalidParams, "radius must be non-negative");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_stratum(0, 5);
    std::uniform_real_distribution<double> unit(0.1, 1.0);
    std::uniform_real_distribution<double> amp(0.5, 2.0);
    std::normal_distribution<double> nd;
    const auto edges = cross_edges();

    ProbeResult res;
    res.seed = seed;
    res.samples = samples;
    res.worst_case.distance = INFINITY;

    auto check = [&](const AlgebraProduct& s, const AlgebraProduct& sp, Stratum st, const char* kind) {
        const double dist = max_abs(sp - s);
        if (dist <= 1e-9 * std::fmax(1.0, max_abs(s))) return;
        bool conj = false;
        try {
            conj = hom_conjugate_in(holonomy_of(s), holonomy_of(sp), HomGroup::Aff);
        } catch (const Error& e) {
            if (!is_numeric_degeneracy(e.code())) throw;
            conj = false;
        }
        if (conj) ++res.failures;
        if (conj || (dist < res.worst_case.distance && !res.worst_case.conjugate)) {
            res.worst_case = {to_string(st), kind, dist, conj};
        }
    };

    for (int i = 0; i < samples; ++i) {
        // Base point: a scaled model product moved by a matrix of condition at most 10.
        Stratum st;
        AlgebraProduct s;
        Mat2 g;
        for (;;) {
            st = kAllStrata[pick_stratum(rng)];
            g = random_conditioned(rng, 10.0);
            s = act(g, model_product(st) * amp(rng));
            if (st == Stratum::T) break;
            const HolonomyPair h = holonomy_of(s);
            // stay away from the locus where both holonomy generators are dilations
            if (std::fmax(non_scalar_measure(h.h1.linear), non_scalar_measure(h.h2.linear)) > 0.05) break;
        }
        Mat2 X{nd(rng), nd(rng), nd(rng), nd(rng)};
        X = X * (radius * unit(rng) / std::fmax(1e-300, frobenius(X)));
        check(s, act(mat_exp(X), s), st, "orbit");

        // Neighbour in a higher stratum along a library degeneration ending in st.
        if (radius > 0.0) {
            std::vector<const CrossEdge*> into;
            for (const auto& ce : edges)
                if (ce.edge.to == st) into.push_back(&ce);
            if (!into.empty()) {
                std::uniform_int_distribution<std::size_t> pick(0, into.size() - 1);
                const CrossEdge& ce = *into[pick(rng)];
                const AlgebraProduct base = act(g, ce.limit);
                const double target = radius * unit(rng);
                double t = 1.0;
                AlgebraProduct sp = act(g, ce.edge.source);
                while (max_abs(sp - base) > target && t < 1e12) {
                    t *= 2.0;
                    sp = act(g, act(ce.edge.subgroup.at(t), ce.edge.source));
                }
                check(base, sp, st, "cross-stratum");
            }
        }
    }
    if (!std::isfinite(res.worst_case.distance)) res.worst_case.distance = 0.0;
    return res;
}

}  // namespace affine_torus
