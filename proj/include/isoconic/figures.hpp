#pragma once

// SVG renderings of the construction on each conic.
//
// Elements carry a class naming their role ("conic", "focus", "directrix",
// "triangle", "reflector", "beam", "projection", "label") so the output can
// be checked structurally. World y points up; the viewBox is fitted to the
// figure's key points with a 10% margin.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isoconic/conic.hpp"
#include "isoconic/optics.hpp"
#include "isoconic/scene_file.hpp"

namespace isoconic {

enum class FigureId { isosceles, ellipse_two_step, projection, parabola, hyperbola, cassegrain };

std::string_view to_string(FigureId id) noexcept;
std::optional<FigureId> figure_from_string(std::string_view name) noexcept;
std::vector<FigureId> all_figures();
/// Comma-separated list of valid ids, for error messages.
std::string figure_id_list();

struct FigureSpec {
    FigureId id = FigureId::ellipse_two_step;
    /// Curve to draw; unused by the isosceles and cassegrain figures.
    std::optional<Conic> conic;
    double anchor_param = 0.0;
    Branch branch = Branch::positive;
    double delta = 0.5;
    int width = 800;
    int height = 600;
};

FigureSpec default_figure_spec(FigureId id);

/// Element classes every rendering of `id` contains.
std::vector<std::string_view> required_elements(FigureId id);

std::string render_figure(const FigureSpec& spec);

/// Mirrors and ray paths of a traced scene.
std::string render_trace(const SceneFile& file, const std::vector<TracePath>& paths);

/// Curve samples drawn per conic branch.
inline constexpr int kCurveSamples = 512;

}  // namespace isoconic
