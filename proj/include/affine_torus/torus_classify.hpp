#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "affine_torus/algebra_cone.hpp"
#include "affine_torus/etale_dev.hpp"
#include "affine_torus/gl2cover.hpp"

namespace affine_torus {

struct TransInvariant {
    AlgebraProduct S;
};

// Marked Hopf torus with holonomy h(e_i) = diag(λ_i, λ_i)·τ^{k_i}.
struct Hopf {
    double lambda1 = 2.0;
    double lambda2 = 2.0;
    int k1 = 1;
    int k2 = 0;
};

// Quotient of the universal cover of the punctured plane by (Ã₀, τ^k·B̃₀).
struct TABk {
    Mat2 A;
    Mat2 B;
    int k = 1;
    // c with c⁻¹·B·c upper triangular (and c⁻¹·A·c as well); det c > 0.
    Mat2 conjugator = Mat2::identity();
};

using StructureDescriptor = std::variant<TransInvariant, Hopf, TABk>;

StructureDescriptor make_trans(const AlgebraProduct& s);
StructureDescriptor make_hopf(double lambda1, double lambda2, int k1, int k2);
StructureDescriptor make_TABk(const Mat2& A, const Mat2& B, int k);

// Lifts of the generator images for Hopf and TABk descriptors.
std::pair<GLTildeElement, GLTildeElement> holonomy_lifts(const StructureDescriptor& d);

enum class DevImage { Plane, HalfPlane, Sector, PuncturedPlane };
const char* to_string(DevImage d);

struct ClassificationReport {
    DevImage dev_image = DevImage::Plane;
    bool homogeneous = true;
    bool complete = true;
    std::optional<Stratum> stratum;  // empty for non-homogeneous tori
    std::optional<int> level;
    std::optional<std::pair<GLTildeElement, GLTildeElement>> lifts;
    std::optional<HolonomyPair> affine_holonomy;
};

ClassificationReport classify_structure(const StructureDescriptor& d);

// A TABk whose generators are both dilations is a Hopf torus; this returns it.
std::optional<Hopf> as_hopf(const TABk& t);

struct Brick {
    int strip = 0;  // ℓ, the strip Ω̄_ℓ of θ-width π
    double theta_lo = 0.0;
    double theta_hi = 0.0;
    GLTildeElement generatorA;
    GLTildeElement gluedBy;
};

std::vector<Brick> brick_decomposition(const StructureDescriptor& d);

int gcd_level(int k1, int k2);

}  // namespace affine_torus
