#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <string>

#include "isoconic/error.hpp"
#include "isoconic/scene_file.hpp"

using namespace isoconic;

namespace {

std::string parse_error(std::string_view text) {
    try {
        parse_scene(text);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::parse);
        return e.what();
    }
    return "";
}

}  // namespace

TEST(SceneFile, MinimalScene) {
    const SceneFile f = parse_scene(R"({"conics": [{"kind": "ellipse", "parameters": {"a": 5, "b": 3}}]})");
    ASSERT_EQ(f.scene.mirrors.size(), 1u);
    EXPECT_TRUE(f.rays.empty());
    EXPECT_EQ(f.scene.mirrors[0].role, MirrorRole::mirror);
    EXPECT_EQ(f.options.max_bounces, 8);
}

TEST(SceneFile, FullSceneFields) {
    const SceneFile f = parse_scene(R"({
      "conics": [{"kind": "hyperbola", "parameters": {"a": 1, "b": 2},
                  "placement": {"translate": [1, 2], "rotate": 0.5},
                  "role": "secondary", "branch": "negative", "aperture": [0.1, 0.4]}],
      "rays": [{"origin": [0, 0], "dir": [0, 2]}],
      "options": {"on_curve_tolerance": 1e-8, "max_bounces": 3}
    })");
    const Mirror& m = f.scene.mirrors[0];
    EXPECT_EQ(m.role, MirrorRole::secondary);
    EXPECT_EQ(m.branch, Branch::negative);
    EXPECT_DOUBLE_EQ(m.aperture.outer, 0.4);
    EXPECT_DOUBLE_EQ(m.conic.placement().rotation(), 0.5);
    EXPECT_DOUBLE_EQ(f.rays[0].dir.dy(), 1.0);
    EXPECT_DOUBLE_EQ(f.options.tolerances.on_curve, 1e-8);
    EXPECT_EQ(f.options.max_bounces, 3);
}

TEST(SceneFile, SyntaxErrorReportsLineAndColumn) {
    const std::string msg = parse_error("{\n  \"conics\": [\n    {\"kind\": }\n  ]\n}\n");
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(SceneFile, SchemaErrorsNameTheLocation) {
    EXPECT_NE(parse_error(R"({"conics": [{"kind": "circle", "parameters": {}}]})").find("/conics/0/kind"),
              std::string::npos);
    EXPECT_NE(parse_error(R"({"conics": [{"kind": "ellipse", "parameters": {"a": 3, "b": 5}}]})")
                  .find("/conics/0"),
              std::string::npos);
    EXPECT_NE(parse_error(R"({"conics": [], "extra": 1})").find("unknown key 'extra'"), std::string::npos);
    EXPECT_NE(parse_error(R"({"conics": [], "rays": [{"origin": [0, 0], "dir": [0, 0]}]})").find("/rays/0/dir"),
              std::string::npos);
    EXPECT_NE(parse_error(R"({"conics": [{"kind": "ellipse", "parameters": {"a": 5, "b": 3}, "branch": "positive"}]})"),
              "");
    EXPECT_NE(parse_error(R"({"conics": [], "options": {"max_bounces": 0}})"), "");
    EXPECT_NE(parse_error(R"([1, 2])"), "");
}

TEST(SceneFile, RoundTripIsStable) {
    const SceneFile a = load_scene(std::string(SCENE_DIR) + "/cassegrain.json");
    const std::string once = serialize_scene(a);
    const SceneFile b = parse_scene(once);
    EXPECT_EQ(serialize_scene(b), once);
    ASSERT_EQ(b.rays.size(), a.rays.size());
    for (std::size_t i = 0; i < a.rays.size(); ++i) {
        EXPECT_EQ(a.rays[i].origin, b.rays[i].origin);
        EXPECT_EQ(a.rays[i].dir.dx(), b.rays[i].dir.dx());
    }
}

TEST(SceneFile, BundledFilesMatchTheirSerialization) {
    for (const char* name : {"cassegrain.json", "ellipse.json"}) {
        const std::string path = std::string(SCENE_DIR) + "/" + name;
        std::ifstream in(path);
        const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        EXPECT_EQ(serialize_scene(parse_scene(text)), text) << name;
    }
}

TEST(SceneFile, MissingFile) {
    EXPECT_THROW(load_scene("/nonexistent/scene.json"), Error);
}
