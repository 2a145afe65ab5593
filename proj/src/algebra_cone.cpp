#include "affine_torus/algebra_cone.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include "affine_torus/error.hpp"

namespace affine_torus {

namespace {

// Anything at or below kZero·scale is treated as exactly zero, anything at or
// above kNonzero·scale as nonzero; values in between are refused.
constexpr double kZero = 1e-12;
constexpr double kNonzero = 1e-9;

const Vec2 kBasis[2] = {{1.0, 0.0}, {0.0, 1.0}};

enum class Sign { Zero, Positive, Negative };

Sign decide(double value, double scale, const char* what) {
    const double a = std::fabs(value);
    if (a <= kZero * scale) return Sign::Zero;
    if (a >= kNonzero * scale) return value > 0.0 ? Sign::Positive : Sign::Negative;
    throw Error(ErrorCode::DegenerateRank, std::string(what) + " inside the tolerance band");
}

void require_in_cone(const AlgebraProduct& s) {
    if (!in_cone(s)) throw Error(ErrorCode::NotInCone, "associativity residual too large");
}

}  // namespace

double frobenius(const AlgebraProduct& s) {
    double acc = 0.0;
    for (double c : s.coeffs()) acc += c * c;
    return std::sqrt(acc);
}

double max_abs(const AlgebraProduct& s) {
    double m = 0.0;
    for (double c : s.coeffs()) m = std::fmax(m, std::fabs(c));
    return m;
}

const char* to_string(Stratum s) {
    switch (s) {
    case Stratum::T: return "T";
    case Stratum::D: return "D";
    case Stratum::C2: return "C2";
    case Stratum::C1: return "C1";
    case Stratum::B: return "B";
    case Stratum::A: return "A";
    }
    return "?";
}

Stratum stratum_from_string(const std::string& s) {
    for (Stratum x : kAllStrata) {
        if (s == to_string(x)) return x;
    }
    throw Error(ErrorCode::InvalidParams, "unknown stratum '" + s + "'");
}

double associativity_residual(const AlgebraProduct& s) {
    double r = 0.0;
    for (const Vec2& u : kBasis)
        for (const Vec2& v : kBasis)
            for (const Vec2& w : kBasis) r = std::fmax(r, norm(s(s(u, v), w) - s(u, s(v, w))));
    return r;
}

bool in_cone(const AlgebraProduct& s) {
    const double n = frobenius(s);
    return associativity_residual(s) <= 1e-9 * std::fmax(1.0, n * n);
}

bool is_complete(const AlgebraProduct& s) {
    require_in_cone(s);
    const double tol = 1e-9 * std::fmax(1.0, frobenius(s));
    return std::fabs(s.left(kBasis[0]).trace()) <= tol && std::fabs(s.left(kBasis[1]).trace()) <= tol;
}

Stratum classify_algebra(const AlgebraProduct& s) {
    require_in_cone(s);
    const double scale = frobenius(s);
    if (scale <= kZero) return Stratum::T;

    // Singular values of the 2x3 matrix with columns c11, c12, c22. The small one
    // goes through Cauchy–Binet, det(CCᵀ) = Σ minors², to keep relative accuracy.
    const Vec2 c[3] = {s.c11, s.c12, s.c22};
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const Vec2& v : c) {
        sxx += v.x * v.x;
        sxy += v.x * v.y;
        syy += v.y * v.y;
    }
    const double half = (sxx - syy) / 2.0;
    const double lmax = (sxx + syy) / 2.0 + std::hypot(half, sxy);
    const double sigma1 = std::sqrt(lmax);
    const double m01 = cross(c[0], c[1]), m02 = cross(c[0], c[2]), m12 = cross(c[1], c[2]);
    const double sigma2 = std::sqrt(m01 * m01 + m02 * m02 + m12 * m12) / sigma1;

    if (decide(sigma2, scale, "second singular value") == Sign::Zero) {
        // Rank one: S(x, y) = q(x, y)·w. An idempotent exists iff q(w, w) ≠ 0.
        Vec2 w = half >= 0.0 ? Vec2{lmax - syy, sxy} : Vec2{sxy, lmax - sxx};
        w = w * (1.0 / norm(w));
        return decide(norm(s(w, w)), scale, "w·w") == Sign::Zero ? Stratum::D : Stratum::C2;
    }

    // Rank two means unital. For the traceless y, Cayley–Hamilton on L_y gives
    // y² = −det(L_y)·e, which separates nilpotent, split and complex cases.
    const double t1 = s.left(kBasis[0]).trace();
    const double t2 = s.left(kBasis[1]).trace();
    Vec2 y{-t2, t1};
    y = y * (1.0 / norm(y));
    const Mat2 ly = s.left(y);
    const double f = frobenius(ly);
    switch (decide(ly.det(), f * f, "det L_y")) {
    case Sign::Zero: return Stratum::C1;
    case Sign::Negative: return Stratum::B;
    case Sign::Positive: return Stratum::A;
    }
    return Stratum::A;
}

namespace {

AlgebraProduct act_unchecked(const Mat2& g, const AlgebraProduct& s) {
    const Mat2 gi = g.inverse();
    const Vec2 u1 = gi.col1(), u2 = gi.col2();
    return {g * s(u1, u1), g * s(u1, u2), g * s(u2, u2)};
}

}  // namespace

AlgebraProduct act(const Mat2& g, const AlgebraProduct& s) {
    const double d = g.det();
    if (!(std::fabs(d) > 1e-14 * std::fmax(1e-300, frobenius(g) * frobenius(g)))) {
        throw Error(ErrorCode::SingularMatrix, "acting matrix is singular");
    }
    return act_unchecked(g, s);
}

AlgebraProduct model_product(Stratum s) {
    const Vec2 z{0, 0}, e1{1, 0}, e2{0, 1};
    switch (s) {
    case Stratum::T: return {z, z, z};
    case Stratum::D: return {z, z, e1};
    case Stratum::C2: return {z, z, e2};
    case Stratum::C1: return {z, e1, e2};
    case Stratum::B: return {e1, z, e2};
    case Stratum::A: return {e1, e2, -e1};
    }
    return {};
}

Mat2 OneParamSubgroup::at(double t) const { return mat_exp(X * std::log(t)); }

namespace {

double parse_power(const std::string& entry) {
    static const std::regex re(R"(\s*(1|t(?:\^\(?([-+]?[0-9]*\.?[0-9]+)\)?)?)\s*)");
    std::smatch m;
    if (!std::regex_match(entry, m, re)) {
        throw Error(ErrorCode::InvalidParams, "cannot parse subgroup entry '" + entry + "'");
    }
    if (m[1] == "1") return 0.0;
    return m[2].matched ? std::stod(m[2].str()) : 1.0;
}

}  // namespace

OneParamSubgroup parse_subgroup(const std::string& text) {
    static const std::regex dil(R"(\s*t\s*\*?\s*E\s*)");
    static const std::regex dg(R"(\s*diag\s*\(([^,]+),(.+)\)\s*)");
    if (std::regex_match(text, dil)) return OneParamSubgroup::dilation();
    std::smatch m;
    if (std::regex_match(text, m, dg)) {
        return OneParamSubgroup::diag(parse_power(m[1].str()), parse_power(m[2].str()));
    }
    throw Error(ErrorCode::InvalidParams, "cannot parse subgroup '" + text + "'");
}

std::variant<AlgebraProduct, Divergent> degenerate(const AlgebraProduct& s, const OneParamSubgroup& lambda) {
    require_in_cone(s);
    std::array<AlgebraProduct, 6> f;
    // λ(t) is invertible by construction but may be badly conditioned at t = 10⁶
    for (int k = 0; k < 6; ++k) {
        const Mat2 g = lambda.at(std::pow(10.0, k + 1));
        if (!(g.det() != 0.0) || !std::isfinite(g.det())) return Divergent{"subgroup leaves GL(2) numerically"};
        f[k] = act_unchecked(g, s);
    }
    for (const auto& x : f) {
        for (double c : x.coeffs()) {
            if (!std::isfinite(c)) return Divergent{"non-finite coefficients"};
        }
    }
    // Richardson steps removing the 1/t and 1/t² terms; samples are a factor 10 apart.
    auto r1 = [&](int k) { return (f[k + 1] * 10.0 - f[k]) * (1.0 / 9.0); };
    auto r2 = [&](int k) { return (r1(k + 1) * 100.0 - r1(k)) * (1.0 / 99.0); };
    const AlgebraProduct a = r2(3);
    const AlgebraProduct b = r2(2);
    const double spread = max_abs(a - b);
    if (spread > 1e-6 * std::fmax(1.0, max_abs(a))) {
        return Divergent{"samples do not settle (spread " + std::to_string(spread) + ")"};
    }
    // Clean coefficients that are zero up to extrapolation noise.
    auto c = a.coeffs();
    for (double& x : c) {
        if (std::fabs(x) < 1e-9) x = 0.0;
    }
    return AlgebraProduct::from_coeffs(c);
}

std::vector<DegenerationEdge> degeneration_library() {
    const Vec2 z{0, 0}, e1{1, 0}, e2{0, 1};
    // C1 in the basis where e2 has e2² = e1 + e2, so a diag(t², t) flow keeps e1.
    const AlgebraProduct c1_shifted{z, e1, e1 + e2};
    // B with unit e1 and e2² = e1.
    const AlgebraProduct b_split{e1, e2, e1};
    return {
        {Stratum::A, Stratum::C1, model_product(Stratum::A), OneParamSubgroup::diag(0, 1), "diag(1,t)"},
        {Stratum::C1, Stratum::D, c1_shifted, OneParamSubgroup::diag(2, 1), "diag(t^2,t)"},
        {Stratum::D, Stratum::T, model_product(Stratum::D), OneParamSubgroup::dilation(), "t*E"},
        {Stratum::B, Stratum::C2, model_product(Stratum::B), OneParamSubgroup::diag(1, 0), "diag(t,1)"},
        {Stratum::C2, Stratum::T, model_product(Stratum::C2), OneParamSubgroup::dilation(), "t*E"},
        {Stratum::B, Stratum::C1, b_split, OneParamSubgroup::diag(0, 1), "diag(1,t)"},
    };
}

}  // namespace affine_torus
