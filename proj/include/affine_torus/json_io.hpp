#pragma once

#include <json.hpp>

#include "affine_torus/algebra_cone.hpp"
#include "affine_torus/charvariety.hpp"
#include "affine_torus/gluing.hpp"
#include "affine_torus/torus_classify.hpp"

namespace affine_torus {

using json = nlohmann::json;

// Malformed documents raise Error(InvalidParams), never nlohmann exceptions.

json to_json(const Vec2& v);
json to_json(const Mat2& m);  // [m11, m12, m21, m22]
json to_json(const AffineMap2& a);  // {"l": [4], "t": [2]}
json to_json(const AlgebraProduct& s);  // [c11x, c11y, c12x, c12y, c22x, c22y]
json to_json(const GLTildeElement& g);  // {"m": [4], "theta": θ}
json to_json(const GluingDatum& d);
json to_json(const GluingReport& r);
json to_json(const StructureDescriptor& d);
json to_json(const ClassificationReport& r);
json to_json(const ProbeResult& r);

Vec2 vec2_from_json(const json& j);
Mat2 mat2_from_json(const json& j);
AffineMap2 affine_from_json(const json& j);
AlgebraProduct algebra_from_json(const json& j);
GLTildeElement gltilde_from_json(const json& j);
GluingDatum gluing_from_json(const json& j);
StructureDescriptor descriptor_from_json(const json& j);
// {"g1": .., "g2": ..} with matrices or lifts, or {"h1": .., "h2": ..} affine maps.
HomPoint hompoint_from_json(const json& j);

json read_json_file(const std::string& path);

}  // namespace affine_torus
