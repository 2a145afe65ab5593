#include "affine_torus/affine_core.hpp"

#include <algorithm>
#include <cmath>

namespace affine_torus {

SingularValues singular_values(const Mat2& m) {
    const double f2 = m.m11 * m.m11 + m.m12 * m.m12 + m.m21 * m.m21 + m.m22 * m.m22;
    const double d = std::fabs(m.det());
    const double disc = std::sqrt(std::max(0.0, f2 * f2 - 4.0 * d * d));
    const double s1 = std::sqrt((f2 + disc) / 2.0);
    // s2 through the determinant, the difference form cancels badly
    const double s2 = s1 > 0.0 ? d / s1 : 0.0;
    return {s1, s2};
}

double condition_number(const Mat2& m) {
    const auto sv = singular_values(m);
    return sv.s2 > 0.0 ? sv.s1 / sv.s2 : INFINITY;
}

double distance(const AffineMap2& a, const AffineMap2& b) {
    const Vec2 dt = a.translation - b.translation;
    return std::fmax(max_abs(a.linear - b.linear), std::fmax(std::fabs(dt.x), std::fabs(dt.y)));
}

AffineMap2 commutator(const AffineMap2& a, const AffineMap2& b) {
    return a * b * a.inverse() * b.inverse();
}

const char* to_string(EigenClass2::Tag t) {
    switch (t) {
    case EigenClass2::Tag::RealDistinct: return "RealDistinct";
    case EigenClass2::Tag::RealRepeatedDiagonal: return "RealRepeatedDiagonal";
    case EigenClass2::Tag::RealRepeatedJordan: return "RealRepeatedJordan";
    case EigenClass2::Tag::Complex: return "Complex";
    }
    return "?";
}

namespace {

// Δ = tr² − 4 det written without the large cancelling terms.
double discriminant(const Mat2& m) {
    const double d = m.m11 - m.m22;
    return d * d + 4.0 * m.m12 * m.m21;
}

}  // namespace

EigenClass2 eig2(const Mat2& m) {
    using Tag = EigenClass2::Tag;
    EigenClass2 e;
    const double tr = m.trace();
    const double delta = discriminant(m);
    if (std::fabs(delta) < kDiscriminantTol * std::fmax(1.0, tr * tr)) {
        const double lam = tr / 2.0;
        e.lambda1 = e.lambda2 = lam;
        const double off = max_abs(m - Mat2::scalar(lam));
        e.tag = off <= kDiscriminantTol * std::fmax(1.0, std::fabs(lam)) ? Tag::RealRepeatedDiagonal
                                                                         : Tag::RealRepeatedJordan;
        return e;
    }
    if (delta > 0.0) {
        const double sq = std::sqrt(delta);
        double l1, l2;
        if (tr == 0.0) {
            l1 = sq / 2.0;
            l2 = -sq / 2.0;
        } else {
            l1 = (tr + std::copysign(sq, tr)) / 2.0;
            l2 = m.det() / l1;
        }
        e.tag = Tag::RealDistinct;
        e.lambda1 = std::max(l1, l2);
        e.lambda2 = std::min(l1, l2);
        return e;
    }
    e.tag = Tag::Complex;
    e.modulus = std::sqrt(m.det());
    e.angle = std::atan2(std::sqrt(-delta) / 2.0, tr / 2.0);
    e.rotation_sign = (m.m21 - m.m12) > 0.0 ? 1 : -1;
    e.lambda1 = e.lambda2 = tr / 2.0;
    return e;
}

namespace {

// With M = L − sI we have M² = δI. The exponential is e^s(C·I + S·M) where
// C, S are the even/odd parts of exp(√δ) and S carries the 1/√δ.
struct CS {
    double c;
    double cm1;  // c − 1 without cancellation
    double s;
};

CS cs_of(double delta) {
    if (std::fabs(delta) < 1e-2) {
        // C = Σ δ^k/(2k)!, S = Σ δ^k/(2k+1)!
        double c = 0.0, s = 0.0, term_c = 1.0, term_s = 1.0;
        for (int k = 1; k <= 12; ++k) {
            term_c *= delta / ((2.0 * k - 1.0) * (2.0 * k));
            c += term_c;
            term_s *= delta / ((2.0 * k) * (2.0 * k + 1.0));
            s += term_s;
        }
        return {1.0 + c, c, 1.0 + s};
    }
    if (delta > 0.0) {
        const double r = std::sqrt(delta);
        const double h = std::sinh(r / 2.0);
        return {std::cosh(r), 2.0 * h * h, std::sinh(r) / r};
    }
    const double r = std::sqrt(-delta);
    const double h = std::sin(r / 2.0);
    return {std::cos(r), -2.0 * h * h, std::sin(r) / r};
}

struct ExpParts {
    Mat2 expL;
    Mat2 expm1L;  // e^L − I
};

// (e^a − e^b)/(a − b) without cancellation
double exp_divided_difference(double a, double b) {
    const double hi = std::fmax(a, b), d = std::fabs(a - b);
    if (d < 1e-300) return std::exp(hi);
    return std::exp(hi) * (-std::expm1(-d)) / d;
}

ExpParts exp_parts(const Mat2& L) {
    // Triangular generators (every diagonal one-parameter group among them) keep
    // full relative accuracy in each entry, even with a large eigenvalue spread.
    if (L.m21 == 0.0 || L.m12 == 0.0) {
        const double dd = exp_divided_difference(L.m11, L.m22);
        const Mat2 expm1L{std::expm1(L.m11), L.m12 * dd, L.m21 * dd, std::expm1(L.m22)};
        return {expm1L + Mat2::identity(), expm1L};
    }
    const double s = L.trace() / 2.0;
    const Mat2 M = L - Mat2::scalar(s);
    const double delta = (L.m11 - L.m22) * (L.m11 - L.m22) / 4.0 + L.m12 * L.m21;
    const CS cs = cs_of(delta);
    const double es = std::exp(s);
    const double diag_m1 = std::expm1(s) * cs.c + cs.cm1;  // e^s·C − 1
    const Mat2 expm1L = Mat2::scalar(diag_m1) + M * (es * cs.s);
    return {expm1L + Mat2::identity(), expm1L};
}

Mat2 phi_series(const Mat2& L) {
    int squarings = 0;
    double n = max_abs(L) * 2.0;
    while (n > 0.5) {
        n /= 2.0;
        ++squarings;
    }
    const Mat2 X = L * std::ldexp(1.0, -squarings);
    // φ(X) = Σ X^k/(k+1)!
    Mat2 ph = Mat2::identity();
    Mat2 term = Mat2::identity();
    for (int k = 1; k <= 22; ++k) {
        term = term * X * (1.0 / (k + 1.0));
        ph = ph + term;
    }
    Mat2 ex = Mat2::identity() + X * ph;
    for (int i = 0; i < squarings; ++i) {
        ph = ph * (ex + Mat2::identity()) * 0.5;
        ex = ex * ex;
    }
    return ph;
}

}  // namespace

Mat2 mat_exp(const Mat2& L) { return exp_parts(L).expL; }

Mat2 phi(const Mat2& L) {
    if (singular_values(L).s2 > 1e-6) {
        return exp_parts(L).expm1L * L.inverse();
    }
    return phi_series(L);
}

AffineMap2 exp_affine(const Mat2& L, const Vec2& v) { return {mat_exp(L), phi(L) * v}; }

}  // namespace affine_torus
