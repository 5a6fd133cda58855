#include "isoconic/scene_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "isoconic/error.hpp"

namespace isoconic {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::parse, "scene file: " + (where.empty() ? std::string("/") : where) + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) fail(where, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(where, "unknown key '" + key + "'");
        }
    }
}

const json& required(const json& obj, const std::string& where, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing key '") + key + "'");
    return *it;
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(where, "number is not finite");
    return d;
}

Vec2 pair(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) fail(where, "expected [x, y]");
    return {number(v[0], where + "/0"), number(v[1], where + "/1")};
}

json pair_json(Vec2 v) { return json::array({v.x, v.y}); }

// Library constructors report invalid parameters as invalid_argument; in a
// scene file they are schema errors at a known location.
template <class F>
auto validated(const std::string& where, F&& make) {
    try {
        return make();
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

Placement placement_from_json(const json& j, const std::string& where) {
    only_keys(j, where, {"translate", "rotate"});
    Vec2 t{};
    double r = 0.0;
    if (j.contains("translate")) t = pair(j["translate"], where + "/translate");
    if (j.contains("rotate")) r = number(j["rotate"], where + "/rotate");
    return {Point(t.x, t.y), r};
}

Mirror mirror_from_json(const json& j, const std::string& where) {
    only_keys(j, where, {"kind", "parameters", "placement", "role", "branch", "aperture"});
    Mirror m{conic_from_json(j, where), MirrorRole::mirror, std::nullopt, Aperture{}};
    if (j.contains("role")) {
        const json& r = j["role"];
        const auto role = r.is_string() ? mirror_role_from_string(r.get<std::string>()) : std::nullopt;
        if (!role) fail(where + "/role", "expected \"primary\", \"secondary\" or \"mirror\"");
        m.role = *role;
    }
    if (j.contains("branch")) {
        if (m.conic.kind() != ConicKind::hyperbola) fail(where + "/branch", "only hyperbolas have branches");
        const json& b = j["branch"];
        const std::string s = b.is_string() ? b.get<std::string>() : "";
        if (s == "positive") {
            m.branch = Branch::positive;
        } else if (s == "negative") {
            m.branch = Branch::negative;
        } else {
            fail(where + "/branch", "expected \"positive\" or \"negative\"");
        }
    }
    if (j.contains("aperture")) {
        const Vec2 ap = pair(j["aperture"], where + "/aperture");
        if (!(ap.x >= 0.0 && ap.y > ap.x)) fail(where + "/aperture", "expected [inner, outer] with 0 <= inner < outer");
        m.aperture = {ap.x, ap.y};
    }
    return m;
}

Ray ray_from_json(const json& j, const std::string& where) {
    only_keys(j, where, {"origin", "dir"});
    const Vec2 o = pair(required(j, where, "origin"), where + "/origin");
    const Vec2 d = pair(required(j, where, "dir"), where + "/dir");
    return validated(where + "/dir", [&] { return Ray{Point(o.x, o.y), Direction(d)}; });
}

SceneOptions options_from_json(const json& j, const std::string& where) {
    only_keys(j, where, {"on_curve_tolerance", "self_hit", "root_merge", "max_bounces"});
    SceneOptions opt;
    const auto positive = [&](const char* key, double& out) {
        if (!j.contains(key)) return;
        const double v = number(j[key], where + "/" + key);
        if (!(v > 0.0)) fail(where + "/" + key, "must be positive");
        out = v;
    };
    positive("on_curve_tolerance", opt.tolerances.on_curve);
    positive("self_hit", opt.tolerances.self_hit);
    positive("root_merge", opt.tolerances.root_merge);
    if (j.contains("max_bounces")) {
        const json& v = j["max_bounces"];
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            fail(where + "/max_bounces", "expected an integer >= 1");
        }
        opt.max_bounces = static_cast<int>(v.get<long long>());
    }
    return opt;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

Conic conic_from_json(const json& j, const std::string& where) {
    const json& kind_j = required(j, where, "kind");
    if (!kind_j.is_string()) fail(where + "/kind", "expected a string");
    const std::string kind = kind_j.get<std::string>();
    const std::string pw = where + "/parameters";
    const json& params = required(j, where, "parameters");
    Placement placement;
    if (j.contains("placement")) placement = placement_from_json(j["placement"], where + "/placement");

    if (kind == "ellipse" || kind == "hyperbola") {
        only_keys(params, pw, {"a", "b"});
        const double a = number(required(params, pw, "a"), pw + "/a");
        const double b = number(required(params, pw, "b"), pw + "/b");
        return validated(pw, [&] {
            return kind == "ellipse" ? Conic::ellipse(a, b, placement) : Conic::hyperbola(a, b, placement);
        });
    }
    if (kind == "parabola") {
        only_keys(params, pw, {"p"});
        const double p = number(required(params, pw, "p"), pw + "/p");
        return validated(pw, [&] { return Conic::parabola(p, placement); });
    }
    fail(where + "/kind", "unknown conic kind '" + kind + "' (expected ellipse, parabola or hyperbola)");
}

json conic_to_json(const Conic& conic) {
    json params;
    std::visit(
        [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Parabola>) {
                params = {{"p", shape.p}};
            } else {
                params = {{"a", shape.a}, {"b", shape.b}};
            }
        },
        conic.shape());
    static constexpr const char* kKinds[] = {"ellipse", "parabola", "hyperbola"};
    return {
        {"kind", kKinds[static_cast<int>(conic.kind())]},
        {"parameters", params},
        {"placement",
         {{"translate", pair_json(conic.placement().translation().vec())},
          {"rotate", conic.placement().rotation()}}},
    };
}

SceneFile parse_scene(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw Error(ErrorKind::parse, "scene file: syntax error at line " + std::to_string(line) +
                                          ", column " + std::to_string(col) + ": " + e.what());
    }
    only_keys(doc, "", {"conics", "rays", "options"});

    SceneFile file;
    const json& conics = required(doc, "", "conics");
    if (!conics.is_array()) fail("/conics", "expected an array");
    for (std::size_t i = 0; i < conics.size(); ++i) {
        file.scene.mirrors.push_back(mirror_from_json(conics[i], "/conics/" + std::to_string(i)));
    }
    if (doc.contains("rays")) {
        const json& rays = doc["rays"];
        if (!rays.is_array()) fail("/rays", "expected an array");
        for (std::size_t i = 0; i < rays.size(); ++i) {
            file.rays.push_back(ray_from_json(rays[i], "/rays/" + std::to_string(i)));
        }
    }
    if (doc.contains("options")) file.options = options_from_json(doc["options"], "/options");
    return file;
}

SceneFile load_scene(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "scene file: cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str());
}

std::string serialize_scene(const SceneFile& file) {
    json conics = json::array();
    for (const Mirror& m : file.scene.mirrors) {
        json j = conic_to_json(m.conic);
        j["role"] = std::string(to_string(m.role));
        if (m.branch) j["branch"] = *m.branch == Branch::positive ? "positive" : "negative";
        if (m.aperture.inner != 0.0 || std::isfinite(m.aperture.outer)) {
            j["aperture"] = json::array({m.aperture.inner, m.aperture.outer});
        }
        conics.push_back(std::move(j));
    }
    json rays = json::array();
    for (const Ray& r : file.rays) {
        rays.push_back({{"origin", pair_json(r.origin.vec())}, {"dir", pair_json(r.dir.vec())}});
    }
    const Tolerances& t = file.options.tolerances;
    const json doc = {
        {"conics", conics},
        {"rays", rays},
        {"options",
         {{"on_curve_tolerance", t.on_curve},
          {"self_hit", t.self_hit},
          {"root_merge", t.root_merge},
          {"max_bounces", file.options.max_bounces}}},
    };
    return doc.dump(2) + "\n";
}

}  // namespace isoconic
