#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "affine_torus/affine_core.hpp"
#include "affine_torus/etale_dev.hpp"

namespace affine_torus {

using Quad = std::array<Vec2, 4>;

// Quadrilateral ((0,0), (1,0), p, (0,1)); A pairs the left side with the right
// one, B the bottom side with the top one.
struct GluingDatum {
    Vec2 p{1.0, 1.0};
    AffineMap2 A;
    AffineMap2 B;
    // Map from these normalized coordinates back to the coordinates the
    // holonomy was given in. Identity for hand-made data.
    AffineMap2 chart;

    Quad quad() const { return {Vec2{0.0, 0.0}, Vec2{1.0, 0.0}, p, Vec2{0.0, 1.0}}; }
};

enum class GluingCondition { VertexPairing, DetA, DetB, Commutator, Convexity };
const char* to_string(GluingCondition c);

struct GluingDiagnostic {
    GluingCondition condition;
    double residual;
    std::string message;
};

struct GluingReport {
    bool valid = true;
    std::vector<GluingDiagnostic> diagnostics;
    bool violates(GluingCondition c) const;
};

GluingReport verify_gluing(const GluingDatum& d);

struct NotEmbeddable {
    std::string reason;
};

std::variant<GluingDatum, NotEmbeddable> polygon_from_holonomy(const HolonomyPair& h, const Vec2& q);

struct Viewport {
    double xmin = -5.0, xmax = 5.0;
    double ymin = -5.0, ymax = 5.0;
};

struct Tile {
    int m = 0;
    int n = 0;
    Quad poly;
};

struct Tiling {
    std::vector<Tile> tiles;  // sorted by (m, n)
};

// Images A^m B^n·P for |m|, |n| ≤ r. With a viewport, tiles whose bounding box
// misses it are dropped.
Tiling tile(const GluingDatum& d, int r, const std::optional<Viewport>& viewport = std::nullopt);

// Integer power of an affine map.
AffineMap2 affine_pow(const AffineMap2& g, int n);

double signed_area(const Quad& q);
bool strictly_convex(const Quad& q, double tol = 1e-9);

// Σ det(A)^m det(B)^n · area(P) over the words of radius r.
double expected_tiling_area(const GluingDatum& d, int r);

}  // namespace affine_torus
