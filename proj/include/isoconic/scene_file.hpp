#pragma once

// JSON scene files:
//
//   {
//     "conics": [
//       {"kind": "parabola", "parameters": {"p": 1},
//        "placement": {"translate": [0, 0], "rotate": 0},
//        "role": "primary", "aperture": [0, 1]},
//       {"kind": "hyperbola", "parameters": {"a": 0.36, "b": 0.48},
//        "branch": "negative", ...}
//     ],
//     "rays": [{"origin": [0.5, 0.5], "dir": [0, -1]}],
//     "options": {"on_curve_tolerance": 1e-9, "max_bounces": 2}
//   }
//
// Unknown keys are rejected at every level. "rays", "options", "placement",
// "role", "branch" and "aperture" are optional.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "isoconic/conic.hpp"
#include "isoconic/optics.hpp"
#include "isoconic/tolerances.hpp"

namespace isoconic {

struct SceneOptions {
    Tolerances tolerances;
    int max_bounces = 8;
};

struct SceneFile {
    Scene scene;
    std::vector<Ray> rays;
    SceneOptions options;
};

/// Throws Error(parse) carrying line and column for syntax errors and the
/// JSON pointer of the offending value for schema errors.
SceneFile parse_scene(std::string_view text);
SceneFile load_scene(const std::filesystem::path& path);
std::string serialize_scene(const SceneFile& file);

/// One entry of the "conics" array (kind, parameters, placement only).
Conic conic_from_json(const nlohmann::json& j, const std::string& where = "");
nlohmann::json conic_to_json(const Conic& conic);

}  // namespace isoconic
