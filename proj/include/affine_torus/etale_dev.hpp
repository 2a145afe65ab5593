#pragma once

#include "affine_torus/affine_core.hpp"
#include "affine_torus/algebra_cone.hpp"

namespace affine_torus {

struct HolonomyPair {
    AffineMap2 h1;
    AffineMap2 h2;
};

// ρ_S(v) = exp [[L_v, v], [0, 0]], an étale affine action of ℝ² fixing nothing.
AffineMap2 rho_S(const AlgebraProduct& s, const Vec2& v);
// D_S(v) = ρ_S(v)(0)
Vec2 develop(const AlgebraProduct& s, const Vec2& v);
// Derivative of D_S at v; equals the linear part of ρ_S(v).
Mat2 develop_jacobian(const AlgebraProduct& s, const Vec2& v);
HolonomyPair holonomy_of(const AlgebraProduct& s);

// Commutator and orientation checks of the holonomy invariant.
double commutator_residual(const HolonomyPair& h);

// Base point of the model domain: develop(model_product(X), v) + base_point(X)
// lands in the domain of X.
Vec2 base_point(Stratum s);
// Plane for T, D; upper half plane for C1, C2; open quadrant for B; punctured plane for A.
bool in_model_domain(Stratum s, const Vec2& p);

// Parameters: T (u, v), D (u, v), C1 (t, z), C2 (v, t), B (a, b) with a, b > 0, A (t, θ).
AffineMap2 model_group_element(Stratum s, double p1, double p2);

// Membership of g in the normalizer of the model group in Aff(2).
bool normalizer_check(Stratum s, const AffineMap2& g);

}  // namespace affine_torus
