#include "affine_torus/etale_dev.hpp"

#include <cmath>

#include "affine_torus/error.hpp"

namespace affine_torus {

namespace {

void require_in_cone(const AlgebraProduct& s) {
    if (!in_cone(s)) throw Error(ErrorCode::NotInCone, "associativity residual too large");
}

constexpr double kTol = 1e-9;

bool near_zero(double x, double scale) { return std::fabs(x) <= kTol * std::fmax(1.0, scale); }

}  // namespace

AffineMap2 rho_S(const AlgebraProduct& s, const Vec2& v) {
    require_in_cone(s);
    return exp_affine(s.left(v), v);
}

Vec2 develop(const AlgebraProduct& s, const Vec2& v) { return rho_S(s, v).translation; }

Mat2 develop_jacobian(const AlgebraProduct& s, const Vec2& v) { return rho_S(s, v).linear; }

HolonomyPair holonomy_of(const AlgebraProduct& s) {
    return {rho_S(s, {1.0, 0.0}), rho_S(s, {0.0, 1.0})};
}

double commutator_residual(const HolonomyPair& h) {
    return distance(commutator(h.h1, h.h2), AffineMap2::identity());
}

Vec2 base_point(Stratum s) {
    switch (s) {
    case Stratum::T:
    case Stratum::D: return {0.0, 0.0};
    case Stratum::C1:
    case Stratum::C2: return {0.0, 1.0};
    case Stratum::B: return {1.0, 1.0};
    case Stratum::A: return {1.0, 0.0};
    }
    return {};
}

bool in_model_domain(Stratum s, const Vec2& p) {
    switch (s) {
    case Stratum::T:
    case Stratum::D: return std::isfinite(p.x) && std::isfinite(p.y);
    case Stratum::C1:
    case Stratum::C2: return p.y > 0.0;
    case Stratum::B: return p.x > 0.0 && p.y > 0.0;
    case Stratum::A: return p.x != 0.0 || p.y != 0.0;
    }
    return false;
}

AffineMap2 model_group_element(Stratum s, double p1, double p2) {
    if (!std::isfinite(p1) || !std::isfinite(p2)) {
        throw Error(ErrorCode::InvalidParams, "non-finite parameters");
    }
    switch (s) {
    case Stratum::T: return AffineMap2::translate({p1, p2});
    case Stratum::D: return {{1.0, p2, 0.0, 1.0}, {p1 + 0.5 * p2 * p2, p2}};
    case Stratum::C1: {
        const double et = std::exp(p1);
        return {{et, p2, 0.0, et}, {}};
    }
    case Stratum::C2: return {Mat2::diag(1.0, std::exp(p2)), {p1, 0.0}};
    case Stratum::B:
        if (!(p1 > 0.0 && p2 > 0.0)) throw Error(ErrorCode::InvalidParams, "B needs positive diagonal");
        return {Mat2::diag(p1, p2), {}};
    case Stratum::A: return {K(p2) * std::exp(p1), {}};
    }
    throw Error(ErrorCode::InvalidParams, "unknown stratum");
}

bool normalizer_check(Stratum s, const AffineMap2& g) {
    const Mat2& l = g.linear;
    const double scale = max_abs(l);
    if (near_zero(l.det(), scale * scale)) return false;
    const bool linear_only = near_zero(g.translation.x, scale) && near_zero(g.translation.y, scale);
    switch (s) {
    case Stratum::T:
        return true;
    case Stratum::D:
        // [[d², b], [0, d]] composed with D, which contains every translation direction needed
        return near_zero(l.m21, scale) && near_zero(l.m11 - l.m22 * l.m22, scale * scale);
    case Stratum::C1:
        return linear_only && near_zero(l.m21, scale);
    case Stratum::C2:
        return near_zero(l.m12, scale) && near_zero(l.m21, scale) && near_zero(g.translation.y, scale);
    case Stratum::B: {
        const bool diagonal = near_zero(l.m12, scale) && near_zero(l.m21, scale);
        const bool anti = near_zero(l.m11, scale) && near_zero(l.m22, scale);
        return linear_only && (diagonal || anti);
    }
    case Stratum::A: {
        // commutes with J (complex linear) or anticommutes (complex antilinear)
        const bool commutes = near_zero(l.m11 - l.m22, scale) && near_zero(l.m12 + l.m21, scale);
        const bool anti = near_zero(l.m11 + l.m22, scale) && near_zero(l.m12 - l.m21, scale);
        return linear_only && (commutes || anti);
    }
    }
    return false;
}

}  // namespace affine_torus
