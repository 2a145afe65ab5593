// Command line front end. Exit codes: 0 ok, 2 invalid input, 3 numeric degeneracy.
#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "affine_torus/charvariety.hpp"
#include "affine_torus/error.hpp"
#include "affine_torus/json_io.hpp"
#include "affine_torus/render.hpp"
#include "affine_torus/theta_suite.hpp"
#include "affine_torus/torus_classify.hpp"

namespace fs = std::filesystem;
using namespace affine_torus;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kNumeric = 3;
constexpr std::uint64_t kDefaultSeed = 20240917;

// --seed wins, then AFFINE_TORUS_SEED, then the built-in default.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("AFFINE_TORUS_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidParams, "AFFINE_TORUS_SEED is not an unsigned integer");
        }
    }
    return kDefaultSeed;
}

void write_atomically(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error(ErrorCode::InvalidParams, "cannot write '" + path.string() + "'");
        out << content;
    }
    fs::rename(tmp, path);
}

Viewport parse_viewport(const std::string& text) {
    Viewport v;
    char c1, c2, c3;
    std::istringstream in(text);
    if (!(in >> v.xmin >> c1 >> v.xmax >> c2 >> v.ymin >> c3 >> v.ymax) || c1 != ',' || c2 != ',' || c3 != ',') {
        throw Error(ErrorCode::InvalidParams, "viewport must read xmin,xmax,ymin,ymax");
    }
    return v;
}

Mat2 parse_matrix(const std::string& text) {
    Mat2 m;
    char c1, c2, c3;
    std::istringstream in(text);
    if (!(in >> m.m11 >> c1 >> m.m12 >> c2 >> m.m21 >> c3 >> m.m22)) {
        throw Error(ErrorCode::InvalidParams, "matrix must read m11,m12,m21,m22");
    }
    return m;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flat affine two-tori: universal cover arithmetic, cone classification, gluing and rendering"};
    app.require_subcommand(1);

    std::string descriptor_path, datum_path, algebra_path, pair_path, svg_path, out_dir;
    std::string subgroup = "t*E", group = "gltilde", viewport_text, matrix_text;
    int radius = 3, frames = 5, samples = 500, trials = 10000, layers = 4, iterates = 8;
    double probe_radius = 0.05, max_log10 = 2.0;
    std::uint64_t seed_flag = 0;

    auto* classify = app.add_subcommand("classify", "classify a structure descriptor");
    classify->add_option("--descriptor", descriptor_path, "descriptor JSON")->required();

    auto* glue = app.add_subcommand("glue", "verify a gluing datum and tile it");
    glue->add_option("--datum", datum_path, "gluing datum JSON")->required();
    glue->add_option("--radius", radius, "word radius")->check(CLI::NonNegativeNumber);
    glue->add_option("--svg", svg_path, "write the tiling here");
    glue->add_option("--viewport", viewport_text, "xmin,xmax,ymin,ymax (default -5,5,-5,5)");

    auto* degen = app.add_subcommand("degenerate", "degenerate a cone point along a one-parameter subgroup");
    degen->add_option("--algebra", algebra_path, "algebra product JSON (six numbers)")->required();
    degen->add_option("--subgroup", subgroup, "e.g. \"t*E\", \"diag(t,1)\", \"diag(t^2,t)\"");
    degen->add_option("--frames", frames, "number of frames")->check(CLI::NonNegativeNumber);
    degen->add_option("--out", out_dir, "directory for frame SVGs");
    degen->add_option("--radius", radius, "word radius per frame")->check(CLI::NonNegativeNumber);
    degen->add_option("--max-log10", max_log10, "last frame at t = 10^x");
    degen->add_option("--viewport", viewport_text, "xmin,xmax,ymin,ymax");

    auto* conj = app.add_subcommand("conjugacy", "decide conjugacy of two elements or two homomorphisms");
    conj->add_option("--group", group, "gltilde | glplus | pgl | aff")->required();
    conj->add_option("--pair", pair_path, "JSON with keys g,h (elements) or rho1,rho2 (homomorphisms)")->required();

    auto* probe = app.add_subcommand("probe", "local injectivity probe of the holonomy map");
    probe->add_option("--samples", samples)->check(CLI::PositiveNumber);
    probe->add_option("--radius", probe_radius)->check(CLI::NonNegativeNumber);
    auto* probe_seed = probe->add_option("--seed", seed_flag, "PRNG seed (env AFFINE_TORUS_SEED)");

    auto* theta = app.add_subcommand("theta-suite", "rotation angle properties on random lifts");
    theta->add_option("--trials", trials)->check(CLI::PositiveNumber);
    auto* theta_seed = theta->add_option("--seed", seed_flag, "PRNG seed (env AFFINE_TORUS_SEED)");

    auto* bricks = app.add_subcommand("bricks", "brick decomposition of a TABk torus");
    bricks->add_option("--descriptor", descriptor_path, "TABk descriptor JSON")->required();
    bricks->add_option("--svg", svg_path, "render the strips in (theta, log r) coordinates");
    bricks->add_option("--layers", layers)->check(CLI::PositiveNumber);

    auto* orbits = app.add_subcommand("orbits", "iterate a linear map on points of the unit circle");
    orbits->add_option("--matrix", matrix_text, "m11,m12,m21,m22")->required();
    orbits->add_option("--iterates", iterates)->check(CLI::NonNegativeNumber);
    orbits->add_option("--svg", svg_path)->required();
    orbits->add_option("--viewport", viewport_text, "xmin,xmax,ymin,ymax");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        RenderOptions opts;
        if (!viewport_text.empty()) opts.viewport = parse_viewport(viewport_text);
        opts.radius = radius;

        if (*classify) {
            print(to_json(classify_structure(descriptor_from_json(read_json_file(descriptor_path)))));
            return kOk;
        }
        if (*glue) {
            const GluingDatum d = gluing_from_json(read_json_file(datum_path));
            const GluingReport rep = verify_gluing(d);
            json out = to_json(rep);
            if (rep.valid) {
                const Tiling t = tile(d, radius, opts.viewport);
                out["tiles"] = t.tiles.size();
                if (!svg_path.empty()) {
                    write_atomically(svg_path, render_tiling(t, opts));
                    out["svg"] = svg_path;
                }
            }
            print(out);
            return rep.valid ? kOk : kInvalid;
        }
        if (*degen) {
            const AlgebraProduct s = algebra_from_json(read_json_file(algebra_path));
            const OneParamSubgroup lambda = parse_subgroup(subgroup);
            json out;
            out["subgroup"] = subgroup;
            const auto lim = degenerate(s, lambda);
            if (const auto* p = std::get_if<AlgebraProduct>(&lim)) {
                out["limit"] = to_json(*p);
                out["limit_stratum"] = to_string(classify_algebra(*p));
            } else {
                out["limit"] = nullptr;
                out["divergent"] = std::get<Divergent>(lim).reason;
            }
            json fr = json::array();
            const auto frames_out = degeneration_frames(s, lambda, frame_times(frames, max_log10), opts);
            for (std::size_t i = 0; i < frames_out.size(); ++i) {
                const auto& f = frames_out[i];
                json e{{"t", f.t}};
                if (f.svg) {
                    if (!out_dir.empty()) {
                        char name[32];
                        std::snprintf(name, sizeof name, "frame_%03zu.svg", i);
                        const fs::path path = fs::path(out_dir) / name;
                        write_atomically(path, *f.svg);
                        e["file"] = path.string();
                    }
                } else {
                    e["skipped"] = f.warning;
                    std::cerr << "warning: " << f.warning << "\n";
                }
                fr.push_back(e);
            }
            out["frames"] = fr;
            print(out);
            return kOk;
        }
        if (*conj) {
            const json j = read_json_file(pair_path);
            const HomGroup g = hom_group_from_string(group);
            bool result = false;
            json out{{"group", group}};
            if (j.contains("rho1")) {
                result = hom_conjugate_in(hompoint_from_json(j.at("rho1")), hompoint_from_json(j.at("rho2")), g);
                out["kind"] = "homomorphism";
            } else {
                if (!j.contains("g") || !j.contains("h")) throw Error(ErrorCode::InvalidParams, "need keys g,h or rho1,rho2");
                if (g == HomGroup::Aff) throw Error(ErrorCode::InvalidParams, "aff applies to homomorphisms");
                const Group gg = g == HomGroup::GLplus ? Group::GLplus : g == HomGroup::PGL ? Group::PGL : Group::GLtilde;
                const auto elem = [](const json& x) {
                    return x.is_object() ? gltilde_from_json(x) : lift(mat2_from_json(x), 0);
                };
                const GLTildeElement a = elem(j.at("g")), b = elem(j.at("h"));
                result = conjugate_in(a, b, gg);
                out["kind"] = "element";
                out["eigen_class"] = {to_string(eig2(a.m).tag), to_string(eig2(b.m).tag)};
                out["theta"] = {a.theta, b.theta};
            }
            out["conjugate"] = result;
            print(out);
            return kOk;
        }
        if (*probe) {
            print(to_json(local_injectivity_probe(samples, probe_radius, resolve_seed(probe_seed->count() ? std::optional(seed_flag) : std::nullopt))));
            return kOk;
        }
        if (*theta) {
            const ThetaSuiteResult r = run_theta_suite(trials, resolve_seed(theta_seed->count() ? std::optional(seed_flag) : std::nullopt));
            json checks = json::array();
            for (const auto& c : r.checks) {
                checks.push_back({{"name", c.name}, {"trials", c.trials}, {"violations", c.violations},
                                  {"min_margin", c.min_margin}});
            }
            print({{"seed", r.seed}, {"checks", checks}, {"literal_inverse_violations", r.literal_inverse_violations},
                   {"passed", r.passed()}});
            return r.passed() ? kOk : 1;
        }
        if (*bricks) {
            const StructureDescriptor d = descriptor_from_json(read_json_file(descriptor_path));
            const auto list = brick_decomposition(d);
            json arr = json::array();
            for (const auto& b : list) {
                arr.push_back({{"strip", b.strip}, {"theta_range", {b.theta_lo, b.theta_hi}},
                               {"generatorA", to_json(b.generatorA)}, {"gluedBy", to_json(b.gluedBy)}});
            }
            json out{{"bricks", list.size()}, {"records", arr}};
            if (!svg_path.empty()) {
                write_atomically(svg_path, render_bricks(std::get<TABk>(d), layers, opts));
                out["svg"] = svg_path;
            }
            print(out);
            return kOk;
        }
        if (*orbits) {
            if (viewport_text.empty()) opts.viewport = Viewport{-3, 3, -3, 3};
            write_atomically(svg_path, render_orbits(parse_matrix(matrix_text), iterates, opts));
            print({{"svg", svg_path}, {"expansion_class", to_string(expansion_class(parse_matrix(matrix_text)))}});
            return kOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_numeric_degeneracy(e.code()) ? kNumeric : kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kOk;
}
