#include "affine_torus/gluing.hpp"

#include <algorithm>
#include <cmath>

#include "affine_torus/error.hpp"

namespace affine_torus {

namespace {

constexpr double kTol = 1e-9;

Quad image(const AffineMap2& g, const Quad& q) { return {g(q[0]), g(q[1]), g(q[2]), g(q[3])}; }

double min_turn(const Quad& q) {
    double m = INFINITY;
    for (int i = 0; i < 4; ++i) {
        const Vec2 a = q[(i + 3) % 4], b = q[i], c = q[(i + 1) % 4];
        m = std::fmin(m, cross(b - a, c - b));
    }
    return m;
}

}  // namespace

const char* to_string(GluingCondition c) {
    switch (c) {
    case GluingCondition::VertexPairing: return "VertexPairing";
    case GluingCondition::DetA: return "DetA";
    case GluingCondition::DetB: return "DetB";
    case GluingCondition::Commutator: return "Commutator";
    case GluingCondition::Convexity: return "Convexity";
    }
    return "?";
}

bool GluingReport::violates(GluingCondition c) const {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [c](const GluingDiagnostic& d) { return d.condition == c; });
}

double signed_area(const Quad& q) {
    double a = 0.0;
    for (int i = 0; i < 4; ++i) a += cross(q[i], q[(i + 1) % 4]);
    return a / 2.0;
}

bool strictly_convex(const Quad& q, double tol) { return min_turn(q) > tol; }

GluingReport verify_gluing(const GluingDatum& d) {
    GluingReport rep;
    auto fail = [&](GluingCondition c, double r, std::string msg) {
        rep.valid = false;
        rep.diagnostics.push_back({c, r, std::move(msg)});
    };
    const Vec2 o{0, 0}, e1{1, 0}, e2{0, 1};
    const double pairing = std::max({norm(d.A(o) - e1), norm(d.A(e2) - d.p), norm(d.B(o) - e2),
                                     norm(d.B(e1) - d.p)});
    if (!(pairing <= kTol)) fail(GluingCondition::VertexPairing, pairing, "side pairings miss the vertices");
    const double da = d.A.linear.det(), db = d.B.linear.det();
    if (!(da > 0.0)) fail(GluingCondition::DetA, da, "det l(A) <= 0");
    if (!(db > 0.0)) fail(GluingCondition::DetB, db, "det l(B) <= 0");
    const double comm = distance(commutator(d.A, d.B), AffineMap2::identity());
    if (!(comm <= kTol)) fail(GluingCondition::Commutator, comm, "commutator != Id");
    const double turn = min_turn(d.quad());
    if (!(turn > kTol)) fail(GluingCondition::Convexity, turn, "quadrilateral not strictly convex");
    return rep;
}

std::variant<GluingDatum, NotEmbeddable> polygon_from_holonomy(const HolonomyPair& h, const Vec2& q) {
    const double scale = std::fmax(1.0, std::fmax(max_abs(h.h1.linear), max_abs(h.h2.linear)));
    if (commutator_residual(h) > kTol * scale) {
        throw Error(ErrorCode::NonCommuting, "holonomy generators do not commute");
    }
    if (!(h.h1.linear.det() > 0.0 && h.h2.linear.det() > 0.0)) {
        return NotEmbeddable{"orientation reversing holonomy"};
    }
    const Vec2 a = h.h1(q) - q, b = h.h2(q) - q;
    const Mat2 F = Mat2::columns(a, b);
    if (std::fabs(F.det()) <= 1e-12 * std::fmax(1.0, norm(a) * norm(b))) {
        return NotEmbeddable{"degenerate triangle (q, h1 q, h2 q)"};
    }
    // N sends q, h1 q, h2 q to (0,0), (1,0), (0,1)
    const AffineMap2 chart{F, q};
    const AffineMap2 N = chart.inverse();
    GluingDatum d;
    d.A = N * h.h1 * chart;
    d.B = N * h.h2 * chart;
    d.p = N(h.h1(h.h2(q)));
    d.chart = chart;
    if (!strictly_convex(d.quad())) return NotEmbeddable{"quadrilateral not convex"};
    return d;
}

AffineMap2 affine_pow(const AffineMap2& g, int n) {
    AffineMap2 base = n < 0 ? g.inverse() : g;
    AffineMap2 acc = AffineMap2::identity();
    for (int i = 0; i < std::abs(n); ++i) acc = acc * base;
    return acc;
}

Tiling tile(const GluingDatum& d, int r, const std::optional<Viewport>& viewport) {
    if (r < 0) throw Error(ErrorCode::InvalidParams, "negative radius");
    if (!verify_gluing(d).valid) throw Error(ErrorCode::InvalidGluing, "gluing conditions fail");
    const Quad P = d.quad();
    Tiling t;
    for (int m = -r; m <= r; ++m) {
        const AffineMap2 am = affine_pow(d.A, m);
        for (int n = -r; n <= r; ++n) {
            Tile tl{m, n, image(am * affine_pow(d.B, n), P)};
            if (viewport) {
                double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
                for (const Vec2& v : tl.poly) {
                    x0 = std::fmin(x0, v.x);
                    x1 = std::fmax(x1, v.x);
                    y0 = std::fmin(y0, v.y);
                    y1 = std::fmax(y1, v.y);
                }
                if (x1 < viewport->xmin || x0 > viewport->xmax || y1 < viewport->ymin || y0 > viewport->ymax)
                    continue;
            }
            t.tiles.push_back(tl);
        }
    }
    return t;
}

double expected_tiling_area(const GluingDatum& d, int r) {
    const double da = d.A.linear.det(), db = d.B.linear.det();
    double sa = 0.0, sb = 0.0;
    for (int k = -r; k <= r; ++k) {
        sa += std::pow(da, k);
        sb += std::pow(db, k);
    }
    return sa * sb * signed_area(d.quad());
}

}  // namespace affine_torus
