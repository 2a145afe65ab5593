#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "affine_torus/affine_core.hpp"

namespace affine_torus {

// Commutative bilinear product on ℝ², stored by its values on basis pairs.
struct AlgebraProduct {
    Vec2 c11{};  // e1·e1
    Vec2 c12{};  // e1·e2 = e2·e1
    Vec2 c22{};  // e2·e2

    Vec2 operator()(const Vec2& u, const Vec2& v) const {
        return c11 * (u.x * v.x) + c12 * (u.x * v.y + u.y * v.x) + c22 * (u.y * v.y);
    }
    // L_u = S(u, ·)
    Mat2 left(const Vec2& u) const { return Mat2::columns((*this)(u, {1, 0}), (*this)(u, {0, 1})); }

    AlgebraProduct operator+(const AlgebraProduct& o) const { return {c11 + o.c11, c12 + o.c12, c22 + o.c22}; }
    AlgebraProduct operator-(const AlgebraProduct& o) const { return {c11 - o.c11, c12 - o.c12, c22 - o.c22}; }
    AlgebraProduct operator*(double s) const { return {c11 * s, c12 * s, c22 * s}; }

    std::array<double, 6> coeffs() const { return {c11.x, c11.y, c12.x, c12.y, c22.x, c22.y}; }
    static AlgebraProduct from_coeffs(const std::array<double, 6>& c) {
        return {{c[0], c[1]}, {c[2], c[3]}, {c[4], c[5]}};
    }
};

double frobenius(const AlgebraProduct& s);
double max_abs(const AlgebraProduct& s);

enum class Stratum { T, D, C2, C1, B, A };
inline constexpr std::array<Stratum, 6> kAllStrata{Stratum::T, Stratum::D, Stratum::C2,
                                                  Stratum::C1, Stratum::B, Stratum::A};
const char* to_string(Stratum s);
Stratum stratum_from_string(const std::string& s);

double associativity_residual(const AlgebraProduct& s);
// True when the residual is within 1e-9·max(1, ‖S‖²).
bool in_cone(const AlgebraProduct& s);
bool is_complete(const AlgebraProduct& s);
Stratum classify_algebra(const AlgebraProduct& s);

// (g·S)(u, v) = g·S(g⁻¹u, g⁻¹v)
AlgebraProduct act(const Mat2& g, const AlgebraProduct& s);

// Representative products: T zero; D e2²=e1; C2 e2²=e2; C1 e1e2=e1, e2²=e2;
// B e1²=e1, e2²=e2; A complex multiplication with unit e1.
AlgebraProduct model_product(Stratum s);

// λ(t) = exp(log t · X)
struct OneParamSubgroup {
    Mat2 X = Mat2::zero();
    Mat2 at(double t) const;
    static OneParamSubgroup diag(double a, double b) { return {Mat2::diag(a, b)}; }
    static OneParamSubgroup dilation() { return {Mat2::identity()}; }
};

// Parses "t*E", "diag(t,1)", "diag(t^2,t)", "diag(1,t^-1)" and similar.
OneParamSubgroup parse_subgroup(const std::string& text);

struct Divergent {
    std::string reason;
};

// Limit of act(λ(t), S) as t → ∞, from samples t = 10, …, 10⁶.
std::variant<AlgebraProduct, Divergent> degenerate(const AlgebraProduct& s, const OneParamSubgroup& lambda);

struct DegenerationEdge {
    Stratum from;
    Stratum to;
    AlgebraProduct source;  // a point of the stratum `from`
    OneParamSubgroup subgroup;
    std::string subgroup_text;
};

// One explicit degeneration for each edge A→C1, C1→D, D→T, B→C2, C2→T, B→C1.
std::vector<DegenerationEdge> degeneration_library();

}  // namespace affine_torus
