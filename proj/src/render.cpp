#include "affine_torus/render.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "affine_torus/error.hpp"
#include "affine_torus/etale_dev.hpp"

namespace affine_torus {

namespace {

std::string fmt(double x) {
    // fixed precision keeps output byte-stable; avoid printing "-0.000000"
    if (std::fabs(x) < 5e-7) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

bool misses(const Quad& q, const Viewport& v) {
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const Vec2& p : q) {
        x0 = std::fmin(x0, p.x);
        x1 = std::fmax(x1, p.x);
        y0 = std::fmin(y0, p.y);
        y1 = std::fmax(y1, p.y);
    }
    return x1 < v.xmin || x0 > v.xmax || y1 < v.ymin || y0 > v.ymax;
}

std::string svg_open(const Viewport& v, const RenderOptions& opts) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(v.xmin) + " " + fmt(-v.ymax) + " " +
           fmt(v.xmax - v.xmin) + " " + fmt(v.ymax - v.ymin) + "\" width=\"600\" height=\"" +
           std::to_string(static_cast<int>(std::lround(600.0 * (v.ymax - v.ymin) / (v.xmax - v.xmin)))) + "\">\n";
    out += "<g transform=\"scale(1,-1)\" stroke=\"" + opts.stroke + "\" stroke-width=\"" + fmt(opts.stroke_width) +
           "\" stroke-linejoin=\"round\">\n";
    return out;
}

std::string points_attr(const std::vector<Vec2>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ' ';
        s += fmt(pts[i].x) + "," + fmt(pts[i].y);
    }
    return s;
}

}  // namespace

std::string render_tiling(const Tiling& t, const RenderOptions& opts) {
    const Viewport& v = opts.viewport;
    if (!(v.xmax > v.xmin && v.ymax > v.ymin)) throw Error(ErrorCode::InvalidParams, "degenerate viewport");
    if (t.tiles.empty()) throw Error(ErrorCode::EmptyTiling, "nothing to render");
    std::string out = svg_open(v, opts);
    for (const Tile& tl : t.tiles) {
        if (misses(tl.poly, v)) continue;
        const std::string& fill = opts.palette[static_cast<std::size_t>(((tl.m + tl.n) % 2 + 2) % 2)];
        out += "<polygon data-word=\"" + std::to_string(tl.m) + "," + std::to_string(tl.n) + "\" fill=\"" + fill +
               "\" points=\"" + points_attr({tl.poly.begin(), tl.poly.end()}) + "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::vector<DegenerationFrame> degeneration_frames(const AlgebraProduct& s, const OneParamSubgroup& lambda,
                                                   const std::vector<double>& ts, const RenderOptions& opts) {
    std::vector<DegenerationFrame> frames;
    for (double t : ts) {
        DegenerationFrame f;
        f.t = t;
        const AlgebraProduct st = act(lambda.at(t), s);
        const auto datum = polygon_from_holonomy(holonomy_of(st), {0.0, 0.0});
        if (const auto* ne = std::get_if<NotEmbeddable>(&datum)) {
            f.warning = "t=" + fmt(t) + ": " + ne->reason;
        } else {
            f.svg = render_tiling(tile(std::get<GluingDatum>(datum), opts.radius, opts.viewport), opts);
        }
        frames.push_back(std::move(f));
    }
    return frames;
}

std::string render_bricks(const TABk& t, int layers, const RenderOptions& opts) {
    if (t.k == 0 || layers <= 0) throw Error(ErrorCode::InvalidParams, "need k != 0 and layers > 0");
    constexpr int kSteps = 48;
    const int n = std::abs(t.k);
    const double dir = t.k > 0 ? 1.0 : -1.0;
    // radius of A^j(unit circle) on the ray through K(θ)e₁
    auto log_r = [&](int j, double theta) {
        Mat2 inv_pow = Mat2::identity();
        const Mat2 ai = t.A.inverse();
        for (int i = 0; i < j; ++i) inv_pow = inv_pow * ai;
        return -std::log(norm(inv_pow * (K(theta) * Vec2{1.0, 0.0})));
    };
    std::vector<std::vector<Vec2>> polys;
    std::vector<int> parity;
    double ymax = 0.0;
    for (int l = 0; l < n; ++l) {
        for (int j = 0; j < layers; ++j) {
            std::vector<Vec2> poly;
            for (int s = 0; s <= kSteps; ++s) {
                const double th = dir * (l + static_cast<double>(s) / kSteps) * std::numbers::pi;
                poly.push_back({th, log_r(j, th)});
            }
            for (int s = kSteps; s >= 0; --s) {
                const double th = dir * (l + static_cast<double>(s) / kSteps) * std::numbers::pi;
                const double y = log_r(j + 1, th);
                ymax = std::fmax(ymax, y);
                poly.push_back({th, y});
            }
            polys.push_back(std::move(poly));
            parity.push_back((l + j) % 2);
        }
    }
    const double span = n * std::numbers::pi;
    Viewport v{dir > 0 ? -0.3 : -span - 0.3, dir > 0 ? span + 0.3 : 0.3, -0.5, ymax + 0.5};
    std::string out = svg_open(v, opts);
    for (std::size_t i = 0; i < polys.size(); ++i) {
        out += "<polygon fill=\"" + opts.palette[static_cast<std::size_t>(parity[i])] + "\" points=\"" +
               points_attr(polys[i]) + "\"/>\n";
    }
    // the closing side is identified with the first one through τ^k·B̃₀
    out += "<line stroke-dasharray=\"0.1,0.1\" x1=\"" + fmt(dir * span) + "\" y1=\"" + fmt(v.ymin) + "\" x2=\"" +
           fmt(dir * span) + "\" y2=\"" + fmt(v.ymax) + "\"/>\n";
    out += "</g>\n</svg>\n";
    return out;
}

std::string render_orbits(const Mat2& m, int iterates, const RenderOptions& opts) {
    if (!(std::fabs(m.det()) > 0.0)) throw Error(ErrorCode::SingularMatrix, "orbit map must be invertible");
    const Viewport& v = opts.viewport;
    if (!(v.xmax > v.xmin && v.ymax > v.ymin)) throw Error(ErrorCode::InvalidParams, "degenerate viewport");
    const Mat2 mi = m.inverse();
    std::string out = svg_open(v, opts);
    for (int i = 0; i < 12; ++i) {
        const double a = 2.0 * std::numbers::pi * i / 12.0;
        std::vector<Vec2> back, fwd;
        Vec2 p{std::cos(a), std::sin(a)}, q = p;
        for (int j = 0; j < iterates; ++j) {
            q = mi * q;
            back.push_back(q);
        }
        std::vector<Vec2> pts(back.rbegin(), back.rend());
        pts.push_back(p);
        for (int j = 0; j < iterates; ++j) {
            p = m * p;
            pts.push_back(p);
        }
        out += "<polyline fill=\"none\" stroke=\"" + opts.palette[static_cast<std::size_t>(i % 2)] +
               "\" points=\"" + points_attr(pts) + "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::vector<double> frame_times(int n, double max_log10) {
    std::vector<double> ts;
    if (n <= 0) return ts;
    if (n == 1) return {1.0};
    for (int i = 0; i < n; ++i) ts.push_back(std::pow(10.0, max_log10 * i / (n - 1)));
    return ts;
}

}  // namespace affine_torus
