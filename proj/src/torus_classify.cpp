#include "affine_torus/torus_classify.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "affine_torus/error.hpp"

namespace affine_torus {

namespace {

bool is_dilation(const Mat2& m) { return eig2(m).tag == EigenClass2::Tag::RealRepeatedDiagonal; }

bool positive_real_spectrum(const Mat2& m) {
    const EigenClass2 e = eig2(m);
    return e.tag != EigenClass2::Tag::Complex && e.lambda2 > 0.0;
}

// Unit eigenvector for a real eigenvalue, completed to a positive frame.
Mat2 triangularizer(const Mat2& m) {
    const EigenClass2 e = eig2(m);
    if (e.tag == EigenClass2::Tag::RealRepeatedDiagonal) return Mat2::identity();
    const Vec2 r1{m.m11 - e.lambda1, m.m12};
    const Vec2 r2{m.m21, m.m22 - e.lambda1};
    const Vec2 r = norm(r1) >= norm(r2) ? r1 : r2;
    const Vec2 v = Vec2{-r.y, r.x} * (1.0 / norm(r));
    return Mat2::columns(v, J(v));
}

void check_hopf(double l1, double l2, int k1, int k2) {
    if (!(l1 > 0.0 && l2 > 0.0)) throw Error(ErrorCode::InvalidParams, "Hopf parameters need λ > 0");
    if (std::fabs(std::log(l1) * k2 - std::log(l2) * k1) <= 1e-12) {
        throw Error(ErrorCode::DegenerateLattice, "(log λ1)k2 − (log λ2)k1 = 0");
    }
}

void check_tabk(const Mat2& A, const Mat2& B, int k) {
    if (expansion_class(A) != ExpandingClass::Expansion) throw Error(ErrorCode::NotExpansion, "A is not an expansion");
    if (!positive_real_spectrum(B)) throw Error(ErrorCode::NonPositiveEigenvalues, "B needs positive real eigenvalues");
    const double s = std::fmax(1.0, frobenius(A) * frobenius(B));
    if (max_abs(A * B - B * A) > 1e-9 * s) throw Error(ErrorCode::NonCommuting, "AB != BA");
    if (k == 0) throw Error(ErrorCode::ZeroLevel, "k must be non-zero");
}

}  // namespace

const char* to_string(DevImage d) {
    switch (d) {
    case DevImage::Plane: return "Plane";
    case DevImage::HalfPlane: return "HalfPlane";
    case DevImage::Sector: return "Sector";
    case DevImage::PuncturedPlane: return "PuncturedPlane";
    }
    return "?";
}

int gcd_level(int k1, int k2) { return std::gcd(k1, k2); }

StructureDescriptor make_trans(const AlgebraProduct& s) {
    if (!in_cone(s)) throw Error(ErrorCode::NotInCone, "product is not associative");
    return TransInvariant{s};
}

StructureDescriptor make_hopf(double lambda1, double lambda2, int k1, int k2) {
    check_hopf(lambda1, lambda2, k1, k2);
    return Hopf{lambda1, lambda2, k1, k2};
}

StructureDescriptor make_TABk(const Mat2& A, const Mat2& B, int k) {
    check_tabk(A, B, k);
    TABk t{A, B, k, Mat2::identity()};
    // B fixes a line; when B is a dilation use A's eigenline instead.
    t.conjugator = is_dilation(B) ? triangularizer(A) : triangularizer(B);
    return t;
}

std::pair<GLTildeElement, GLTildeElement> holonomy_lifts(const StructureDescriptor& d) {
    if (const auto* h = std::get_if<Hopf>(&d)) {
        return {mul(tau_pow(h->k1), lift(Mat2::scalar(h->lambda1), 0)),
                mul(tau_pow(h->k2), lift(Mat2::scalar(h->lambda2), 0))};
    }
    if (const auto* t = std::get_if<TABk>(&d)) {
        // With positive eigenvalues the principal lift is the level-zero one.
        return {lift(t->A, 0), mul(tau_pow(t->k), lift(t->B, 0))};
    }
    throw Error(ErrorCode::WrongTag, "translation invariant structures have affine holonomy only");
}

ClassificationReport classify_structure(const StructureDescriptor& d) {
    ClassificationReport r;
    if (const auto* ti = std::get_if<TransInvariant>(&d)) {
        if (!in_cone(ti->S)) throw Error(ErrorCode::InvalidDescriptor, "product is not in the cone");
        const Stratum s = classify_algebra(ti->S);
        r.stratum = s;
        r.homogeneous = true;
        r.complete = s == Stratum::T || s == Stratum::D;
        switch (s) {
        case Stratum::T:
        case Stratum::D: r.dev_image = DevImage::Plane; break;
        case Stratum::C1:
        case Stratum::C2: r.dev_image = DevImage::HalfPlane; break;
        case Stratum::B: r.dev_image = DevImage::Sector; break;
        case Stratum::A: r.dev_image = DevImage::PuncturedPlane; break;
        }
        r.affine_holonomy = holonomy_of(ti->S);
        return r;
    }
    if (const auto* h = std::get_if<Hopf>(&d)) {
        try {
            check_hopf(h->lambda1, h->lambda2, h->k1, h->k2);
        } catch (const Error& e) {
            throw Error(ErrorCode::InvalidDescriptor, e.what());
        }
        r.dev_image = DevImage::PuncturedPlane;
        r.homogeneous = true;
        r.complete = false;
        r.stratum = Stratum::A;
        r.level = gcd_level(h->k1, h->k2);
        r.lifts = holonomy_lifts(d);
        r.affine_holonomy = HolonomyPair{{r.lifts->first.m, {}}, {r.lifts->second.m, {}}};
        return r;
    }
    const auto& t = std::get<TABk>(d);
    try {
        check_tabk(t.A, t.B, t.k);
    } catch (const Error& e) {
        throw Error(ErrorCode::InvalidDescriptor, e.what());
    }
    r.dev_image = DevImage::PuncturedPlane;
    r.complete = false;
    r.homogeneous = is_dilation(t.A) && is_dilation(t.B);
    if (r.homogeneous) r.stratum = Stratum::A;
    r.lifts = holonomy_lifts(d);
    r.level = level(r.lifts->second);
    r.affine_holonomy = HolonomyPair{{r.lifts->first.m, {}}, {r.lifts->second.m, {}}};
    return r;
}

std::optional<Hopf> as_hopf(const TABk& t) {
    if (!is_dilation(t.A) || !is_dilation(t.B)) return std::nullopt;
    return Hopf{t.A.trace() / 2.0, t.B.trace() / 2.0, 0, t.k};
}

std::vector<Brick> brick_decomposition(const StructureDescriptor& d) {
    const auto* t = std::get_if<TABk>(&d);
    if (t == nullptr) throw Error(ErrorCode::WrongTag, "brick decomposition needs a TABk descriptor");
    const auto [a, b] = holonomy_lifts(d);
    const int n = std::abs(t->k);
    const double dir = t->k > 0 ? 1.0 : -1.0;
    std::vector<Brick> out;
    for (int l = 0; l < n; ++l) {
        Brick br;
        br.strip = l;
        br.theta_lo = dir * l * std::numbers::pi;
        br.theta_hi = dir * (l + 1) * std::numbers::pi;
        br.generatorA = a;
        br.gluedBy = (l + 1 == n) ? b : GLTildeElement{};
        out.push_back(br);
    }
    return out;
}

}  // namespace affine_torus
