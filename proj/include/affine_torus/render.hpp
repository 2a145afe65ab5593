#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "affine_torus/algebra_cone.hpp"
#include "affine_torus/gluing.hpp"
#include "affine_torus/torus_classify.hpp"

namespace affine_torus {

struct RenderOptions {
    Viewport viewport;
    double stroke_width = 0.02;
    std::string stroke = "#222222";
    // fill by parity of m + n
    std::array<std::string, 2> palette{"#cfdcec", "#f3d9b8"};
    int frames = 5;
    int radius = 3;
};

// One <polygon> per tile in word order; tiles missing the viewport are dropped.
std::string render_tiling(const Tiling& t, const RenderOptions& opts);

struct DegenerationFrame {
    double t = 1.0;
    std::optional<std::string> svg;  // empty when the frame was skipped
    std::string warning;
};

// Frame i renders the tiling of polygon_from_holonomy(holonomy_of(act(λ(t_i), S)), 0).
std::vector<DegenerationFrame> degeneration_frames(const AlgebraProduct& s, const OneParamSubgroup& lambda,
                                                   const std::vector<double>& ts, const RenderOptions& opts);

// Bricks of T_{A,B,k} drawn in the universal cover of the punctured plane with
// coordinates (θ, log r): strip ℓ covers θ ∈ [ℓπ, (ℓ+1)π] and is layered by the
// images of the unit circle under A^j, j = 0..layers.
std::string render_bricks(const TABk& t, int layers, const RenderOptions& opts);

// Orbits m^j·p, |j| ≤ iterates, of twelve points p on the unit circle.
std::string render_orbits(const Mat2& m, int iterates, const RenderOptions& opts);

// t_i = 10^(i·step) for i = 0, …, n − 1 with the last frame at t = 10^max_log10.
std::vector<double> frame_times(int n, double max_log10 = 2.0);

}  // namespace affine_torus
