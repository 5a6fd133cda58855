#include <gtest/gtest.h>

#include <regex>
#include <string>

#include "isoconic/error.hpp"
#include "isoconic/figures.hpp"

using namespace isoconic;

namespace {

int count_class(const std::string& svg, std::string_view cls) {
    const std::string needle = "class=\"" + std::string(cls) + "\"";
    int n = 0;
    for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(Figures, IdsRoundTrip) {
    ASSERT_EQ(all_figures().size(), 6u);
    for (FigureId id : all_figures()) EXPECT_EQ(figure_from_string(to_string(id)), id);
    EXPECT_FALSE(figure_from_string("nope"));
    EXPECT_EQ(figure_id_list(), "isosceles, ellipse-two-step, projection, parabola, hyperbola, cassegrain");
}

TEST(Figures, EveryFigureHasRequiredElements) {
    for (FigureId id : all_figures()) {
        const std::string svg = render_figure(default_figure_spec(id));
        EXPECT_EQ(svg.rfind("<?xml", 0), 0u) << to_string(id);
        EXPECT_NE(svg.find("<svg "), std::string::npos);
        EXPECT_NE(svg.find("</svg>"), std::string::npos);
        EXPECT_NE(svg.find("viewBox=\""), std::string::npos);
        for (std::string_view cls : required_elements(id)) {
            EXPECT_GT(count_class(svg, cls), 0) << to_string(id) << " lacks " << cls;
        }
        EXPECT_EQ(svg.find("nan"), std::string::npos) << to_string(id);
        EXPECT_EQ(svg.find("inf"), std::string::npos) << to_string(id);
    }
}

TEST(Figures, ByteIdenticalAcrossRuns) {
    for (FigureId id : all_figures()) {
        EXPECT_EQ(render_figure(default_figure_spec(id)), render_figure(default_figure_spec(id)));
    }
}

TEST(Figures, EllipseHasTwoFociAndClosedCurve) {
    const std::string svg = render_figure(default_figure_spec(FigureId::ellipse_two_step));
    EXPECT_EQ(count_class(svg, "focus"), 2);
    EXPECT_GE(count_class(svg, "conic"), 1);
}

TEST(Figures, ParabolaShowsDirectrix) {
    const std::string svg = render_figure(default_figure_spec(FigureId::parabola));
    EXPECT_EQ(count_class(svg, "directrix"), 1);
    EXPECT_EQ(count_class(svg, "focus"), 1);
}

TEST(Figures, CustomDimensions) {
    FigureSpec spec = default_figure_spec(FigureId::hyperbola);
    spec.width = 400;
    spec.height = 300;
    const std::string svg = render_figure(spec);
    EXPECT_NE(svg.find("width=\"400\""), std::string::npos);
    EXPECT_NE(svg.find("height=\"300\""), std::string::npos);
    spec.width = 0;
    EXPECT_THROW(render_figure(spec), Error);
}

TEST(Figures, DegenerateAnchorIsReported) {
    FigureSpec spec = default_figure_spec(FigureId::ellipse_two_step);
    spec.anchor_param = 0.0;
    try {
        render_figure(spec);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::degenerate_triangle);
    }
}
