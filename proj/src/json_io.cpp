#include "affine_torus/json_io.hpp"

#include <fstream>

#include "affine_torus/error.hpp"

namespace affine_torus {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidParams, what); }

std::vector<double> numbers(const json& j, std::size_t n, const char* what) {
    if (!j.is_array() || j.size() != n) bad(std::string(what) + ": expected array of " + std::to_string(n));
    std::vector<double> out;
    for (const auto& x : j) {
        if (!x.is_number()) bad(std::string(what) + ": non-numeric entry");
        out.push_back(x.get<double>());
    }
    return out;
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

int integer(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

json lifts_json(const std::pair<GLTildeElement, GLTildeElement>& p) {
    return json::array({to_json(p.first), to_json(p.second)});
}

}  // namespace

json to_json(const Vec2& v) { return json::array({v.x, v.y}); }
json to_json(const Mat2& m) { return json::array({m.m11, m.m12, m.m21, m.m22}); }
json to_json(const AffineMap2& a) { return {{"l", to_json(a.linear)}, {"t", to_json(a.translation)}}; }

json to_json(const AlgebraProduct& s) {
    json j = json::array();
    for (double c : s.coeffs()) j.push_back(c);
    return j;
}

json to_json(const GLTildeElement& g) { return {{"m", to_json(g.m)}, {"theta", g.theta}}; }

json to_json(const GluingDatum& d) { return {{"p", to_json(d.p)}, {"A", to_json(d.A)}, {"B", to_json(d.B)}}; }

json to_json(const GluingReport& r) {
    json diags = json::array();
    for (const auto& d : r.diagnostics) {
        diags.push_back({{"condition", to_string(d.condition)}, {"residual", d.residual}, {"message", d.message}});
    }
    return {{"valid", r.valid}, {"diagnostics", diags}};
}

json to_json(const StructureDescriptor& d) {
    if (const auto* t = std::get_if<TransInvariant>(&d)) return {{"type", "trans"}, {"S", to_json(t->S)}};
    if (const auto* h = std::get_if<Hopf>(&d)) {
        return {{"type", "hopf"}, {"lambda1", h->lambda1}, {"lambda2", h->lambda2}, {"k1", h->k1}, {"k2", h->k2}};
    }
    const auto& t = std::get<TABk>(d);
    return {{"type", "tabk"}, {"A", to_json(t.A)}, {"B", to_json(t.B)}, {"k", t.k}, {"conjugator", to_json(t.conjugator)}};
}

json to_json(const ClassificationReport& r) {
    json j;
    j["devImage"] = to_string(r.dev_image);
    j["homogeneous"] = r.homogeneous;
    j["complete"] = r.complete;
    j["stratum"] = r.stratum ? to_string(*r.stratum) : "NonHomogeneous";
    j["level"] = r.level ? json(*r.level) : json(nullptr);
    j["holonomyLifts"] = r.lifts ? lifts_json(*r.lifts) : json(nullptr);
    if (r.affine_holonomy) {
        j["holonomy"] = json::array({to_json(r.affine_holonomy->h1), to_json(r.affine_holonomy->h2)});
    } else {
        j["holonomy"] = nullptr;
    }
    return j;
}

json to_json(const ProbeResult& r) {
    return {{"seed", r.seed},
            {"samples", r.samples},
            {"failures", r.failures},
            {"worst_case",
             {{"stratum", r.worst_case.stratum},
              {"kind", r.worst_case.kind},
              {"distance", r.worst_case.distance},
              {"conjugate", r.worst_case.conjugate}}}};
}

Vec2 vec2_from_json(const json& j) {
    const auto v = numbers(j, 2, "vector");
    return {v[0], v[1]};
}

Mat2 mat2_from_json(const json& j) {
    const auto v = numbers(j, 4, "matrix");
    return {v[0], v[1], v[2], v[3]};
}

AffineMap2 affine_from_json(const json& j) { return {mat2_from_json(field(j, "l")), vec2_from_json(field(j, "t"))}; }

AlgebraProduct algebra_from_json(const json& j) {
    const auto v = numbers(j, 6, "algebra product");
    return AlgebraProduct::from_coeffs({v[0], v[1], v[2], v[3], v[4], v[5]});
}

GLTildeElement gltilde_from_json(const json& j) {
    GLTildeElement g{mat2_from_json(field(j, "m")), number(j, "theta")};
    if (!(g.m.det() > 0.0)) throw Error(ErrorCode::NonPositiveDeterminant, "lift with det <= 0");
    return g;
}

GluingDatum gluing_from_json(const json& j) {
    GluingDatum d;
    d.p = vec2_from_json(field(j, "p"));
    d.A = affine_from_json(field(j, "A"));
    d.B = affine_from_json(field(j, "B"));
    return d;
}

StructureDescriptor descriptor_from_json(const json& j) {
    const json& type = field(j, "type");
    if (!type.is_string()) bad("descriptor type must be a string");
    const std::string t = type.get<std::string>();
    if (t == "trans") return make_trans(algebra_from_json(field(j, "S")));
    if (t == "hopf") return make_hopf(number(j, "lambda1"), number(j, "lambda2"), integer(j, "k1"), integer(j, "k2"));
    if (t == "tabk") return make_TABk(mat2_from_json(field(j, "A")), mat2_from_json(field(j, "B")), integer(j, "k"));
    throw Error(ErrorCode::InvalidDescriptor, "unknown descriptor type '" + t + "'");
}

HomPoint hompoint_from_json(const json& j) {
    if (j.is_object() && j.contains("h1")) {
        return HolonomyPair{affine_from_json(field(j, "h1")), affine_from_json(field(j, "h2"))};
    }
    const json& g1 = field(j, "g1");
    const json& g2 = field(j, "g2");
    if (g1.is_object()) return LiftHom{gltilde_from_json(g1), gltilde_from_json(g2)};
    return LinearHom{mat2_from_json(g1), mat2_from_json(g2)};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        bad("'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace affine_torus
