#pragma once

#include "affine_torus/affine_core.hpp"

namespace affine_torus {

// m = K(θ₀)·diag(a1, a2)·[[1, n12], [0, 1]]
struct IwasawaFactors {
    double theta0 = 0.0;  // in (−π, π]
    double a1 = 1.0;
    double a2 = 1.0;
    double n12 = 0.0;
};

IwasawaFactors iwasawa(const Mat2& m);
Mat2 reconstruct(const IwasawaFactors& f);

// An element of the universal cover: the projection m and a branch angle
// θ ≡ θ₀(m) mod 2π.
struct GLTildeElement {
    Mat2 m = Mat2::identity();
    double theta = 0.0;
};

GLTildeElement lift(const Mat2& m, int k = 0);
// The central lift of −E₂ with θ = π.
GLTildeElement tau();
// τ^n, central, θ = nπ.
GLTildeElement tau_pow(int n);
// Lift of a rotation K(θ) along the rotation subgroup, θ unrestricted.
GLTildeElement lifted_K(double theta);

GLTildeElement mul(const GLTildeElement& g, const GLTildeElement& h);
GLTildeElement inv(const GLTildeElement& g);
GLTildeElement pow(const GLTildeElement& g, long n);

// k with g ~ τ^k·(element of AN). Requires real eigenvalues.
int level(const GLTildeElement& g);

enum class ExpandingClass { Expansion, ExpansionTimesRpi, ExpandingSpiral, NotExpanding };
const char* to_string(ExpandingClass c);

ExpandingClass expansion_class(const Mat2& m);
bool has_nonzero_rotation(const GLTildeElement& g);

// Orientation preserving normal form: P·N·P⁻¹ = m with det P > 0.
//   RealDistinct: N = diag(λ1, λ2)
//   scalar: N = λ·E, P = E
//   Jordan: N = [[λ, σ], [0, λ]], σ = ±1
//   Complex: N = [[a, −b], [b, a]], sign(b) = rotation sign
struct NormalForm {
    EigenClass2 eig;
    Mat2 N;
    Mat2 P;
    int jordan_sign = 0;
};

NormalForm normal_form(const Mat2& m);

enum class Group { GLplus, GLtilde, PGL };
const char* to_string(Group g);

bool conjugate_in(const Mat2& g, const Mat2& h, Group group);
bool conjugate_in(const GLTildeElement& g, const GLTildeElement& h, Group group);

// [[cos φ + √sin φ, −sin φ − 1], [sin φ, cos φ − √sin φ]] for sin φ ≥ 0: det 1,
// trace 2 cos φ, conjugate to the counterclockwise rotation R(φ), and tending
// to [[1, −1], [0, 1]] as φ → 0.
Mat2 k_phi(double phi);

// Conjugator c with det c > 0 and c·g·c⁻¹ = h, if the GL⁺ classes agree.
bool glplus_conjugator(const Mat2& g, const Mat2& h, Mat2& c);

}  // namespace affine_torus
