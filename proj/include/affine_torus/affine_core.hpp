#pragma once

#include <cmath>

namespace affine_torus {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }

struct Mat2 {
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
    static Mat2 diag(double a, double b) { return {a, 0.0, 0.0, b}; }
    static Mat2 scalar(double a) { return {a, 0.0, 0.0, a}; }
    static Mat2 columns(const Vec2& c1, const Vec2& c2) { return {c1.x, c2.x, c1.y, c2.y}; }

    Vec2 col1() const { return {m11, m21}; }
    Vec2 col2() const { return {m12, m22}; }

    double det() const { return m11 * m22 - m12 * m21; }
    double trace() const { return m11 + m22; }
    Mat2 transpose() const { return {m11, m21, m12, m22}; }
    // No singularity check; callers that care test det() first.
    Mat2 inverse() const {
        const double d = det();
        return {m22 / d, -m12 / d, -m21 / d, m11 / d};
    }

    Mat2 operator+(const Mat2& o) const { return {m11 + o.m11, m12 + o.m12, m21 + o.m21, m22 + o.m22}; }
    Mat2 operator-(const Mat2& o) const { return {m11 - o.m11, m12 - o.m12, m21 - o.m21, m22 - o.m22}; }
    Mat2 operator-() const { return {-m11, -m12, -m21, -m22}; }
    Mat2 operator*(double s) const { return {m11 * s, m12 * s, m21 * s, m22 * s}; }
    Mat2 operator*(const Mat2& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
    Vec2 operator*(const Vec2& v) const { return {m11 * v.x + m12 * v.y, m21 * v.x + m22 * v.y}; }
    bool operator==(const Mat2&) const = default;
};

inline Mat2 operator*(double s, const Mat2& m) { return m * s; }

inline double frobenius(const Mat2& m) {
    return std::sqrt(m.m11 * m.m11 + m.m12 * m.m12 + m.m21 * m.m21 + m.m22 * m.m22);
}
inline double max_abs(const Mat2& m) {
    return std::fmax(std::fmax(std::fabs(m.m11), std::fabs(m.m12)),
                     std::fmax(std::fabs(m.m21), std::fabs(m.m22)));
}

// K(θ) = [[cos θ, sin θ], [−sin θ, cos θ]]; note K(θ)e₁ = (cos θ, −sin θ).
inline Mat2 K(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c, s, -s, c};
}

// Counterclockwise rotation, R(φ) = K(−φ).
inline Mat2 R(double phi) { return K(-phi); }

// Quarter turn used to complete a vector to a positively oriented frame.
inline Vec2 J(const Vec2& v) { return {-v.y, v.x}; }

// Singular values of a 2x2 matrix, s1 >= s2 >= 0.
struct SingularValues {
    double s1 = 0.0;
    double s2 = 0.0;
};
SingularValues singular_values(const Mat2& m);
double condition_number(const Mat2& m);

struct AffineMap2 {
    Mat2 linear = Mat2::identity();
    Vec2 translation{};

    static AffineMap2 identity() { return {}; }
    static AffineMap2 translate(const Vec2& t) { return {Mat2::identity(), t}; }

    Vec2 operator()(const Vec2& p) const { return linear * p + translation; }
    // (f * g)(p) = f(g(p))
    AffineMap2 operator*(const AffineMap2& g) const {
        return {linear * g.linear, linear * g.translation + translation};
    }
    AffineMap2 inverse() const {
        const Mat2 li = linear.inverse();
        return {li, -(li * translation)};
    }
};

// Max-abs distance between the 3x3 matrices of two affine maps.
double distance(const AffineMap2& a, const AffineMap2& b);

AffineMap2 commutator(const AffineMap2& a, const AffineMap2& b);

struct EigenClass2 {
    enum class Tag { RealDistinct, RealRepeatedDiagonal, RealRepeatedJordan, Complex };
    Tag tag = Tag::RealDistinct;
    double lambda1 = 0.0;  // RealDistinct: lambda1 > lambda2; repeated: the eigenvalue
    double lambda2 = 0.0;
    double modulus = 0.0;  // Complex only
    double angle = 0.0;    // Complex only, in (0, π)
    int rotation_sign = 0; // sign of m21 − m12; Complex only
};

const char* to_string(EigenClass2::Tag t);

// Discriminant tolerance: |Δ| < 1e-9·max(1, tr²) counts as repeated-real.
inline constexpr double kDiscriminantTol = 1e-9;

EigenClass2 eig2(const Mat2& m);

Mat2 mat_exp(const Mat2& L);

// φ(L) = Σ L^k/(k+1)!, so that exp [[L, v],[0, 0]] = [[e^L, φ(L)v],[0, 1]].
Mat2 phi(const Mat2& L);

AffineMap2 exp_affine(const Mat2& L, const Vec2& v);

}  // namespace affine_torus
