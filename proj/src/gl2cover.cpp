#include "affine_torus/gl2cover.hpp"

#include <cmath>
#include <numbers>

#include "affine_torus/error.hpp"

namespace affine_torus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBranchTol = 1e-9;
constexpr double kThetaTol = 1e-6;
constexpr double kClassTol = 1e-9;

void require_positive_det(const Mat2& m) {
    if (!(m.det() > 0.0)) throw Error(ErrorCode::NonPositiveDeterminant, "det <= 0");
}

// Representative of θ₀ + 2πj in the open interval of width 2π around center.
double branch_near(double theta0, double center) {
    const double j = std::round((center - theta0) / (2.0 * kPi));
    const double t = theta0 + 2.0 * kPi * j;
    if (std::fabs(t - center) > kPi - kBranchTol) {
        throw Error(ErrorCode::BranchAmbiguity, "product angle on the branch boundary");
    }
    return t;
}

// Unit eigenvector for the real eigenvalue lam, from the larger row of m − λE.
Vec2 eigenvector(const Mat2& m, double lam) {
    const Vec2 r1{m.m11 - lam, m.m12};
    const Vec2 r2{m.m21, m.m22 - lam};
    const Vec2 r = norm(r1) >= norm(r2) ? r1 : r2;
    const double n = norm(r);
    if (n <= 1e-300) return {1.0, 0.0};
    return {-r.y / n, r.x / n};
}

double rel_discriminant(const Mat2& m) {
    const double d = m.m11 - m.m22;
    const double delta = d * d + 4.0 * m.m12 * m.m21;
    const double tr = m.trace();
    return std::fabs(delta) / std::fmax(1.0, tr * tr);
}

void check_band(const Mat2& m) {
    const double r = rel_discriminant(m);
    if (r >= kDiscriminantTol && r < 10.0 * kDiscriminantTol) {
        throw Error(ErrorCode::Degenerate, "eigenvalue class within tolerance of the parabolic locus");
    }
}

}  // namespace

IwasawaFactors iwasawa(const Mat2& m) {
    require_positive_det(m);
    IwasawaFactors f;
    // −m21 + 0.0 turns a negative zero into +0 so that θ₀ = π, not −π
    f.theta0 = std::atan2(-m.m21 + 0.0, m.m11);
    f.a1 = std::hypot(m.m11, m.m21);
    f.a2 = m.det() / f.a1;
    f.n12 = (m.m11 * m.m12 + m.m21 * m.m22) / (f.a1 * f.a1);
    return f;
}

Mat2 reconstruct(const IwasawaFactors& f) {
    return K(f.theta0) * Mat2::diag(f.a1, f.a2) * Mat2{1.0, f.n12, 0.0, 1.0};
}

GLTildeElement lift(const Mat2& m, int k) {
    return {m, iwasawa(m).theta0 + 2.0 * kPi * k};
}

GLTildeElement tau() { return {-Mat2::identity(), kPi}; }

GLTildeElement tau_pow(int n) {
    return {(n % 2 == 0) ? Mat2::identity() : -Mat2::identity(), n * kPi};
}

GLTildeElement lifted_K(double theta) { return {K(theta), theta}; }

GLTildeElement mul(const GLTildeElement& g, const GLTildeElement& h) {
    const Mat2 m = g.m * h.m;
    return {m, branch_near(iwasawa(m).theta0, g.theta + h.theta)};
}

GLTildeElement inv(const GLTildeElement& g) {
    const Mat2 m = g.m.inverse();
    return {m, branch_near(iwasawa(m).theta0, -g.theta)};
}

GLTildeElement pow(const GLTildeElement& g, long n) {
    GLTildeElement base = n < 0 ? inv(g) : g;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    GLTildeElement acc{Mat2::identity(), 0.0};
    while (e != 0) {
        if (e & 1UL) acc = mul(acc, base);
        e >>= 1;
        if (e != 0) base = mul(base, base);
    }
    return acc;
}

int level(const GLTildeElement& g) {
    const EigenClass2 e = eig2(g.m);
    if (e.tag == EigenClass2::Tag::Complex) {
        throw Error(ErrorCode::NotTriangularizable, "complex eigenvalues");
    }
    const Vec2 v = eigenvector(g.m, e.lambda1);
    const GLTildeElement c = lift(Mat2::columns(v, J(v)), 0);
    const GLTildeElement t = mul(mul(inv(c), g), c);
    const double k = std::round(t.theta / kPi);
    if (std::fabs(t.theta - k * kPi) > kThetaTol) {
        throw Error(ErrorCode::Degenerate, "triangularized lift has θ off the lattice πℤ");
    }
    return static_cast<int>(k);
}

const char* to_string(ExpandingClass c) {
    switch (c) {
    case ExpandingClass::Expansion: return "Expansion";
    case ExpandingClass::ExpansionTimesRpi: return "ExpansionTimesRpi";
    case ExpandingClass::ExpandingSpiral: return "ExpandingSpiral";
    case ExpandingClass::NotExpanding: return "NotExpanding";
    }
    return "?";
}

ExpandingClass expansion_class(const Mat2& m) {
    const EigenClass2 e = eig2(m);
    if (e.tag == EigenClass2::Tag::Complex) {
        return e.modulus > 1.0 ? ExpandingClass::ExpandingSpiral : ExpandingClass::NotExpanding;
    }
    if (e.lambda2 > 1.0) return ExpandingClass::Expansion;
    if (e.lambda1 < -1.0) return ExpandingClass::ExpansionTimesRpi;
    return ExpandingClass::NotExpanding;
}

bool has_nonzero_rotation(const GLTildeElement& g) {
    const EigenClass2 e = eig2(g.m);
    if (e.tag == EigenClass2::Tag::Complex) return true;
    if (e.lambda2 <= 0.0) return true;
    return level(g) != 0;
}

NormalForm normal_form(const Mat2& m) {
    using Tag = EigenClass2::Tag;
    NormalForm nf;
    nf.eig = eig2(m);
    const double lam = nf.eig.lambda1;
    switch (nf.eig.tag) {
    case Tag::RealDistinct: {
        const Vec2 v1 = eigenvector(m, nf.eig.lambda1);
        Vec2 v2 = eigenvector(m, nf.eig.lambda2);
        if (cross(v1, v2) < 0.0) v2 = -v2;
        nf.P = Mat2::columns(v1, v2);
        nf.N = Mat2::diag(nf.eig.lambda1, nf.eig.lambda2);
        break;
    }
    case Tag::RealRepeatedDiagonal:
        nf.P = Mat2::identity();
        nf.N = Mat2::scalar(lam);
        break;
    case Tag::RealRepeatedJordan: {
        const Vec2 v = eigenvector(m, lam);
        const Vec2 w0 = J(v);
        const double mu = dot(v, (m - Mat2::scalar(lam)) * w0);
        nf.jordan_sign = mu > 0.0 ? 1 : -1;
        nf.P = Mat2::columns(v, w0 * (1.0 / std::fabs(mu)));
        nf.N = Mat2{lam, static_cast<double>(nf.jordan_sign), 0.0, lam};
        break;
    }
    case Tag::Complex: {
        const double a = m.trace() / 2.0;
        const double b = nf.eig.rotation_sign * std::sqrt(std::fmax(0.0, m.det() - a * a));
        const Vec2 x{1.0, 0.0};
        const Vec2 y = (m - Mat2::scalar(a)) * x * (1.0 / b);
        nf.P = Mat2::columns(x, y);
        nf.N = Mat2{a, -b, b, a};
        break;
    }
    }
    return nf;
}

const char* to_string(Group g) {
    switch (g) {
    case Group::GLplus: return "glplus";
    case Group::GLtilde: return "gltilde";
    case Group::PGL: return "pgl";
    }
    return "?";
}

bool glplus_conjugator(const Mat2& g, const Mat2& h, Mat2& c) {
    using Tag = EigenClass2::Tag;
    require_positive_det(g);
    require_positive_det(h);
    check_band(g);
    check_band(h);
    const NormalForm a = normal_form(g);
    const NormalForm b = normal_form(h);
    if (a.eig.tag != b.eig.tag) return false;
    const double scale = std::fmax(1.0, std::fmax(frobenius(g), frobenius(h)));
    const double tol = kClassTol * scale;
    auto close = [&](double x, double y) { return std::fabs(x - y) <= tol; };
    bool same = false;
    switch (a.eig.tag) {
    case Tag::RealDistinct:
        same = close(a.eig.lambda1, b.eig.lambda1) && close(a.eig.lambda2, b.eig.lambda2);
        break;
    case Tag::RealRepeatedDiagonal:
        same = close(a.eig.lambda1, b.eig.lambda1);
        break;
    case Tag::RealRepeatedJordan:
        same = close(a.eig.lambda1, b.eig.lambda1) && a.jordan_sign == b.jordan_sign;
        break;
    case Tag::Complex:
        same = close(g.trace(), h.trace()) && std::fabs(g.det() - h.det()) <= tol * scale &&
               a.eig.rotation_sign == b.eig.rotation_sign;
        break;
    }
    if (!same) return false;
    c = b.P * a.P.inverse();
    return true;
}

bool conjugate_in(const Mat2& g, const Mat2& h, Group group) {
    Mat2 c;
    switch (group) {
    case Group::GLplus:
        return glplus_conjugator(g, h, c);
    case Group::GLtilde:
        return conjugate_in(lift(g, 0), lift(h, 0), Group::GLtilde);
    case Group::PGL: {
        const Mat2 r = Mat2::diag(1.0, -1.0);
        const Mat2 gr = r * g * r;
        return glplus_conjugator(g, h, c) || glplus_conjugator(gr, h, c) ||
               glplus_conjugator(g, -h, c) || glplus_conjugator(gr, -h, c);
    }
    }
    return false;
}

bool conjugate_in(const GLTildeElement& g, const GLTildeElement& h, Group group) {
    if (group != Group::GLtilde) return conjugate_in(g.m, h.m, group);
    Mat2 c;
    if (!glplus_conjugator(g.m, h.m, c)) return false;
    // Any conjugator differs from c by the centralizer, whose lifts act trivially on θ.
    const GLTildeElement ct = lift(c, 0);
    const GLTildeElement t = mul(mul(ct, g), inv(ct));
    return std::fabs(t.theta - h.theta) <= kThetaTol;
}

Mat2 k_phi(double phi) {
    const double s = std::sin(phi), c = std::cos(phi);
    if (!(s >= 0.0)) throw Error(ErrorCode::InvalidParams, "k_phi needs sin(phi) >= 0");
    const double r = std::sqrt(s);
    return {c + r, -s - 1.0, s, c - r};
}

}  // namespace affine_torus
