#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "affine_torus/algebra_cone.hpp"
#include "affine_torus/etale_dev.hpp"
#include "affine_torus/gl2cover.hpp"

namespace affine_torus {

struct LinearHom {
    Mat2 g1;
    Mat2 g2;
};

struct LiftHom {
    GLTildeElement g1;
    GLTildeElement g2;
};

// Images of the two generators of ℤ².
using HomPoint = std::variant<LinearHom, LiftHom, HolonomyPair>;

enum class HomGroup { GLplus, GLtilde, PGL, Aff };
const char* to_string(HomGroup g);
HomGroup hom_group_from_string(const std::string& s);

// Simultaneous conjugacy. GLplus and PGL take linear or lifted points (lifts
// are projected), GLtilde needs lifts, Aff needs affine pairs.
bool hom_conjugate_in(const HomPoint& a, const HomPoint& b, HomGroup group);

// Max Frobenius distance of the generator images; monitoring only.
double hom_distance(const LinearHom& a, const LinearHom& b);

struct NonclosedWitness {
    LinearHom conjugated;      // diag(1,t)·ρ₁·diag(1,t)⁻¹
    LinearHom rho0;            // (λE, λE), the Hopf holonomy
    double distance_to_rho0 = 0.0;
};

NonclosedWitness nonclosed_witness(double lambda, double t);

struct BranchedWitness {
    bool pgl_equal = false;
    bool gltilde_equal = false;
};

BranchedWitness branched_witness(double a, double eps);

struct ProbeWorstCase {
    std::string stratum;
    std::string kind;        // "orbit" or "cross-stratum"
    double distance = 0.0;   // max-abs ‖S' − S‖ of the closest distinct pair
    bool conjugate = false;
};

struct ProbeResult {
    std::uint64_t seed = 0;
    int samples = 0;
    int failures = 0;
    ProbeWorstCase worst_case;
};

// Samples cone points away from the Hopf locus, perturbs each within `radius`
// (GL-orbit moves and moves into a neighbouring stratum) and counts pairs whose
// affine holonomies are conjugate although the products differ.
ProbeResult local_injectivity_probe(int samples, double radius, std::uint64_t seed);

}  // namespace affine_torus
