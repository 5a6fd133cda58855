#include "isoconic/figures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "isoconic/construction.hpp"
#include "isoconic/error.hpp"

namespace isoconic {

namespace {

struct Box {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void add(Point p) {
        min_x = std::min(min_x, p.x());
        min_y = std::min(min_y, p.y());
        max_x = std::max(max_x, p.x());
        max_y = std::max(max_y, p.y());
    }
    bool contains(Point p) const {
        return p.x() >= min_x && p.x() <= max_x && p.y() >= min_y && p.y() <= max_y;
    }
    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    std::array<Point, 4> corners() const {
        return {Point(min_x, min_y), Point(max_x, min_y), Point(max_x, max_y), Point(min_x, max_y)};
    }

    /// Grows each side by `fraction` of the extent (a unit if the extent is zero).
    Box expanded(double fraction) const {
        const double mx = width() > 0.0 ? fraction * width() : 1.0;
        const double my = height() > 0.0 ? fraction * height() : 1.0;
        return {min_x - mx, min_y - my, max_x + mx, max_y + my};
    }
};

std::string num(double v) {
    if (std::abs(v) < 5e-7) v = 0.0;
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.6f", v);
    return buf.data();
}

/// SVG writer with world y up: world (x, y) is drawn at (x, -y).
class SvgCanvas {
public:
    explicit SvgCanvas(Box view) : view_(view), stroke_(0.004 * std::max(view.width(), view.height())) {}

    const Box& view() const { return view_; }
    double stroke() const { return stroke_; }

    void polyline(const std::vector<Point>& pts, std::string_view cls, bool dashed = false) {
        if (pts.size() < 2) return;
        body_ << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << colour(cls)
              << "\" stroke-width=\"" << num(stroke_) << "\"" << dash(dashed) << " points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            body_ << (i ? " " : "") << num(pts[i].x()) << ',' << num(-pts[i].y());
        }
        body_ << "\"/>\n";
    }

    void line(Point a, Point b, std::string_view cls, bool dashed = false) {
        body_ << "<line class=\"" << cls << "\" x1=\"" << num(a.x()) << "\" y1=\"" << num(-a.y())
              << "\" x2=\"" << num(b.x()) << "\" y2=\"" << num(-b.y()) << "\" stroke=\"" << colour(cls)
              << "\" stroke-width=\"" << num(stroke_) << "\"" << dash(dashed) << "/>\n";
    }

    void polygon(const std::vector<Point>& pts, std::string_view cls) {
        body_ << "<polygon class=\"" << cls << "\" fill=\"none\" stroke=\"" << colour(cls)
              << "\" stroke-width=\"" << num(stroke_) << "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            body_ << (i ? " " : "") << num(pts[i].x()) << ',' << num(-pts[i].y());
        }
        body_ << "\"/>\n";
    }

    void marker(Point p, std::string_view cls) {
        body_ << "<circle class=\"" << cls << "\" cx=\"" << num(p.x()) << "\" cy=\"" << num(-p.y())
              << "\" r=\"" << num(2.5 * stroke_) << "\" fill=\"" << colour(cls) << "\"/>\n";
    }

    void label(Point p, std::string_view text) {
        body_ << "<text class=\"label\" x=\"" << num(p.x() + 2.0 * stroke_) << "\" y=\""
              << num(-p.y() - 2.0 * stroke_) << "\" font-size=\"" << num(8.0 * stroke_)
              << "\" font-family=\"sans-serif\">" << text << "</text>\n";
    }

    /// Clips `pts` to the view and draws each inside run as its own polyline.
    void clipped_curve(const std::vector<Point>& pts, std::string_view cls) {
        std::vector<Point> run;
        for (const Point& p : pts) {
            if (view_.contains(p)) {
                run.push_back(p);
            } else {
                polyline(run, cls);
                run.clear();
            }
        }
        polyline(run, cls);
    }

    std::string finish(int width, int height) const {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
            << "\" height=\"" << height << "\" viewBox=\"" << num(view_.min_x) << ' ' << num(-view_.max_y)
            << ' ' << num(view_.width()) << ' ' << num(view_.height())
            << "\" preserveAspectRatio=\"xMidYMid meet\">\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    static std::string_view colour(std::string_view cls) {
        if (cls == "conic") return "#1f4e79";
        if (cls == "beam") return "#c0392b";
        if (cls == "reflector") return "#2e7d32";
        if (cls == "directrix") return "#6d4c41";
        if (cls == "projection") return "#8e44ad";
        return "#000000";
    }
    std::string dash(bool dashed) const {
        return dashed ? " stroke-dasharray=\"" + num(3.0 * stroke_) + "," + num(2.0 * stroke_) + "\"" : "";
    }

    Box view_;
    double stroke_;
    std::ostringstream body_;
};

Box fit(std::initializer_list<Point> pts) {
    Box b;
    for (const Point& p : pts) b.add(p);
    return b;
}

std::vector<Point> sample(const Conic& conic, double t0, double t1, Branch branch, int n) {
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(point_at(conic, t0 + (t1 - t0) * i / (n - 1), branch));
    return pts;
}

/// Curve parameter interval whose points can fall inside `view`.
std::pair<double, double> parameter_window(const Conic& conic, const Box& view) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Point& corner : view.corners()) {
        const Point c = conic.placement().to_canonical(corner);
        double t = 0.0;
        if (conic.kind() == ConicKind::parabola) {
            t = c.x();
        } else {
            t = std::asinh(c.y() / std::get<Hyperbola>(conic.shape()).b);
        }
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    return {lo, hi};
}

void draw_conic(SvgCanvas& svg, const Conic& conic) {
    if (conic.kind() == ConicKind::ellipse) {
        std::vector<Point> pts = sample(conic, 0.0, 2.0 * std::numbers::pi, Branch::positive, kCurveSamples + 1);
        svg.clipped_curve(pts, "conic");
        return;
    }
    const auto [lo, hi] = parameter_window(conic, svg.view());
    if (conic.kind() == ConicKind::parabola) {
        svg.clipped_curve(sample(conic, lo, hi, Branch::positive, kCurveSamples), "conic");
        return;
    }
    for (Branch b : {Branch::positive, Branch::negative}) {
        svg.clipped_curve(sample(conic, lo, hi, b, kCurveSamples), "conic");
    }
}

void draw_foci(SvgCanvas& svg, const Conic& conic) {
    if (conic.kind() == ConicKind::parabola) {
        const Point f = parabola_focus(conic);
        svg.marker(f, "focus");
        svg.label(f, "F");
        const Line dl = parabola_directrix(conic);
        const double reach = 2.0 * (svg.view().width() + svg.view().height());
        svg.line(dl.point - dl.dir * reach, dl.point + dl.dir * reach, "directrix", true);
        svg.label(dl.point, "directrix");
        return;
    }
    const auto [f1, f2] = foci(conic);
    svg.marker(f1, "focus");
    svg.label(f1, "F1");
    svg.marker(f2, "focus");
    svg.label(f2, "F2");
}

void draw_triangle(SvgCanvas& svg, const StepTriangle& tri, std::string_view la, std::string_view ld,
                   std::string_view lb) {
    svg.polygon({tri.a, tri.d, tri.b}, "triangle");
    svg.label(tri.a, la);
    svg.label(tri.d, ld);
    svg.label(tri.b, lb);
}

void draw_reflector(SvgCanvas& svg, const StepTriangle& tri) {
    const Line r = apex_reflector(tri);
    const double half = 0.9 * tri.delta;
    svg.line(r.point - r.dir * half, r.point + r.dir * half, "reflector");
}

Conic figure_conic(const FigureSpec& spec, ConicKind expected) {
    if (!spec.conic) throw Error(ErrorKind::invalid_argument, "figure needs a conic");
    if (spec.conic->kind() != expected) {
        throw Error(ErrorKind::unsupported_variant,
                    std::string("figure ") + std::string(to_string(spec.id)) + " draws a different conic kind");
    }
    return *spec.conic;
}

std::string render_isosceles(const FigureSpec& spec) {
    const double h = spec.delta > 0.0 ? spec.delta : 1.0;
    const Point a(-1.5 * h, 0.0);
    const Point c(0.0, h);
    const Point b(1.5 * h, 0.0);
    const Direction in = Direction::between(a, c);
    const Direction out = Direction::between(c, b);
    const Point start = a - in * (0.4 * h);
    const Point end = b + out * (0.4 * h);
    SvgCanvas svg(fit({start, end, c, Point(-1.8 * h, h), Point(1.8 * h, h)}).expanded(0.1));
    svg.polygon({a, c, b}, "triangle");
    svg.line(Point(-1.8 * h, h), Point(1.8 * h, h), "reflector");
    svg.line(start, c, "beam");
    svg.line(c, end, "beam");
    svg.label(a, "A");
    svg.label(b, "B");
    svg.label(c, "C");
    svg.label(c - in * (0.6 * h), "theta_in");
    svg.label(c + out * (0.6 * h), "theta_reflect");
    return svg.finish(spec.width, spec.height);
}

std::string render_ellipse(const FigureSpec& spec, bool projections) {
    const Conic conic = figure_conic(spec, ConicKind::ellipse);
    const StepTriangle tri = two_step(conic, point_at(conic, spec.anchor_param), spec.delta);
    const auto [f1, f2] = foci(conic);
    Box frame = fit({tri.a, tri.b, tri.d, f1, f2});
    for (double t = 0.0; t < 2.0 * std::numbers::pi; t += std::numbers::pi / 2.0) {
        frame.add(point_at(conic, t));
    }
    SvgCanvas svg(frame.expanded(0.1));
    draw_conic(svg, conic);
    draw_foci(svg, conic);
    if (!projections) {
        draw_triangle(svg, tri, "E1", "D", "E2");
        draw_reflector(svg, tri);
        svg.line(f1, tri.d, "beam");
        svg.line(tri.d, f2, "beam");
    } else {
        draw_triangle(svg, tri, "A", "D", "B");
        // Each leg projected onto the line of the other leg.
        const Point foot_a = tri.d + tri.leg2_dir * scalar_projection(tri.a - tri.d, tri.leg2_dir);
        const Point foot_b = tri.d + tri.leg1_dir * scalar_projection(tri.b - tri.d, tri.leg1_dir);
        svg.line(tri.a, foot_a, "projection", true);
        svg.line(tri.d, foot_a, "projection");
        svg.line(tri.b, foot_b, "projection", true);
        svg.line(tri.d, foot_b, "projection");
    }
    return svg.finish(spec.width, spec.height);
}

std::string render_parabola(const FigureSpec& spec) {
    const Conic conic = figure_conic(spec, ConicKind::parabola);
    const StepTriangle tri = two_step(conic, point_at(conic, spec.anchor_param), spec.delta);
    const Point focus = parabola_focus(conic);
    const Direction axis = parabola_axis(conic);
    const double p = std::get<Parabola>(conic.shape()).p;
    const Point vertex = point_at(conic, 0.0);
    const Point beam_start = tri.a + axis * (1.5 * std::max(p, tri.delta));
    const Line dl = parabola_directrix(conic);
    const double reach = std::abs(conic.placement().to_canonical(tri.a).x()) + 2.0 * p;
    SvgCanvas svg(fit({tri.a, tri.b, tri.d, focus, vertex, beam_start, dl.point + dl.dir * reach,
                       dl.point - dl.dir * reach})
                      .expanded(0.1));
    draw_conic(svg, conic);
    draw_foci(svg, conic);
    draw_triangle(svg, tri, "A", "D", "B");
    if (!tri.degenerate) draw_reflector(svg, tri);
    svg.line(beam_start, tri.d, "beam");
    svg.line(tri.d, focus, "beam");
    return svg.finish(spec.width, spec.height);
}

std::string render_hyperbola(const FigureSpec& spec) {
    const Conic conic = figure_conic(spec, ConicKind::hyperbola);
    const StepTriangle tri = two_step(conic, point_at(conic, spec.anchor_param, spec.branch), spec.delta);
    const auto [f1, f2] = foci(conic);
    const Point beyond = tri.d + tri.leg2_dir * (3.0 * tri.delta);
    const double ry = std::abs(conic.placement().to_canonical(tri.a).y()) + 2.0 * tri.delta;
    const Point up = conic.placement().to_world(Point{0.0, ry});
    const Point down = conic.placement().to_world(Point{0.0, -ry});
    SvgCanvas svg(fit({tri.a, tri.b, tri.d, f1, f2, beyond, up, down}).expanded(0.1));
    draw_conic(svg, conic);
    draw_foci(svg, conic);
    draw_triangle(svg, tri, "A", "D", "B");
    if (!tri.degenerate) draw_reflector(svg, tri);
    svg.line(f1, tri.d, "beam");
    svg.line(tri.d, beyond, "beam");
    svg.line(f2, tri.d, "beam", true);
    return svg.finish(spec.width, spec.height);
}

std::vector<Point> mirror_samples(const Mirror& m, const Box& view) {
    const Conic& conic = m.conic;
    if (!std::isfinite(m.aperture.outer)) {
        if (conic.kind() == ConicKind::ellipse) {
            return sample(conic, 0.0, 2.0 * std::numbers::pi, Branch::positive, kCurveSamples + 1);
        }
        const auto [lo, hi] = parameter_window(conic, view);
        return sample(conic, lo, hi, m.branch.value_or(Branch::positive), kCurveSamples);
    }
    const double r = m.aperture.outer;
    switch (conic.kind()) {
        case ConicKind::parabola: return sample(conic, -r, r, Branch::positive, kCurveSamples);
        case ConicKind::hyperbola: {
            const double t = std::asinh(r / std::get<Hyperbola>(conic.shape()).b);
            return sample(conic, -t, t, m.branch.value_or(Branch::positive), kCurveSamples);
        }
        case ConicKind::ellipse: {
            const double b = std::get<Ellipse>(conic.shape()).b;
            const double t = std::asin(std::min(1.0, r / b));
            return sample(conic, -t, t, Branch::positive, kCurveSamples);
        }
    }
    return {};
}

void draw_paths(SvgCanvas& svg, const std::vector<Ray>& rays, const std::vector<TracePath>& paths,
                double tail) {
    for (std::size_t i = 0; i < paths.size(); ++i) {
        std::vector<Point> pts{rays[i].origin};
        for (const Hit& h : paths[i].hits) pts.push_back(h.point);
        pts.push_back(paths[i].final_ray.at(tail));
        svg.polyline(pts, "beam");
    }
}

std::string render_cassegrain(const FigureSpec& spec) {
    const Scene scene = make_cassegrain();
    const Mirror& primary = primary_mirror(scene);
    const double aperture = primary.aperture.outer;
    const std::vector<Ray> rays = cassegrain_rays(scene, 8, aperture);
    std::vector<TracePath> paths;
    for (const Ray& r : rays) paths.push_back(trace(scene, r, 2));
    const Point focus = parabola_focus(primary.conic);
    const Point f2 = cassegrain_focus(scene);
    Box frame = fit({focus, f2, point_at(primary.conic, aperture), point_at(primary.conic, -aperture)});
    for (const Ray& r : rays) frame.add(r.origin);
    const double tail = 1.2 * distance(focus, f2);
    for (const TracePath& p : paths) frame.add(p.final_ray.at(tail));
    SvgCanvas svg(frame.expanded(0.1));
    for (const Mirror& m : scene.mirrors) svg.clipped_curve(mirror_samples(m, svg.view()), "conic");
    svg.marker(focus, "focus");
    svg.label(focus, "F1 (primary focus)");
    svg.marker(f2, "focus");
    svg.label(f2, "F2");
    draw_paths(svg, rays, paths, tail);
    return svg.finish(spec.width, spec.height);
}

}  // namespace

std::string_view to_string(FigureId id) noexcept {
    switch (id) {
        case FigureId::isosceles: return "isosceles";
        case FigureId::ellipse_two_step: return "ellipse-two-step";
        case FigureId::projection: return "projection";
        case FigureId::parabola: return "parabola";
        case FigureId::hyperbola: return "hyperbola";
        case FigureId::cassegrain: return "cassegrain";
    }
    return "unknown";
}

std::vector<FigureId> all_figures() {
    return {FigureId::isosceles, FigureId::ellipse_two_step, FigureId::projection,
            FigureId::parabola,  FigureId::hyperbola,        FigureId::cassegrain};
}

std::optional<FigureId> figure_from_string(std::string_view name) noexcept {
    for (FigureId id : all_figures()) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

std::string figure_id_list() {
    std::string out;
    for (FigureId id : all_figures()) {
        if (!out.empty()) out += ", ";
        out += to_string(id);
    }
    return out;
}

FigureSpec default_figure_spec(FigureId id) {
    FigureSpec spec;
    spec.id = id;
    switch (id) {
        case FigureId::isosceles:
            spec.delta = 1.0;
            break;
        case FigureId::ellipse_two_step:
            spec.conic = Conic::ellipse(5.0, 3.0);
            spec.anchor_param = 1.1;
            spec.delta = 0.5;
            break;
        case FigureId::projection:
            spec.conic = Conic::ellipse(5.0, 3.0);
            spec.anchor_param = 1.1;
            spec.delta = 1.2;
            break;
        case FigureId::parabola:
            spec.conic = Conic::parabola(1.0);
            spec.anchor_param = 1.5;
            spec.delta = 0.4;
            break;
        case FigureId::hyperbola:
            spec.conic = Conic::hyperbola(3.0, 4.0);
            spec.anchor_param = 0.5;
            spec.delta = 0.8;
            break;
        case FigureId::cassegrain:
            break;
    }
    return spec;
}

std::vector<std::string_view> required_elements(FigureId id) {
    switch (id) {
        case FigureId::isosceles: return {"triangle", "reflector", "beam", "label"};
        case FigureId::ellipse_two_step:
            return {"conic", "focus", "triangle", "reflector", "beam", "label"};
        case FigureId::projection: return {"conic", "focus", "triangle", "projection", "label"};
        case FigureId::parabola:
            return {"conic", "focus", "directrix", "triangle", "reflector", "beam", "label"};
        case FigureId::hyperbola: return {"conic", "focus", "triangle", "reflector", "beam", "label"};
        case FigureId::cassegrain: return {"conic", "focus", "beam", "label"};
    }
    return {};
}

std::string render_figure(const FigureSpec& spec) {
    if (!(spec.width > 0 && spec.height > 0)) {
        throw Error(ErrorKind::invalid_argument, "figure dimensions must be positive");
    }
    if (!std::isfinite(spec.delta) || !(spec.delta > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "figure delta must be positive");
    }
    switch (spec.id) {
        case FigureId::isosceles: return render_isosceles(spec);
        case FigureId::ellipse_two_step: return render_ellipse(spec, false);
        case FigureId::projection: return render_ellipse(spec, true);
        case FigureId::parabola: return render_parabola(spec);
        case FigureId::hyperbola: return render_hyperbola(spec);
        case FigureId::cassegrain: return render_cassegrain(spec);
    }
    throw Error(ErrorKind::internal, "unknown figure");
}

std::string render_trace(const SceneFile& file, const std::vector<TracePath>& paths) {
    Box frame;
    for (const Ray& r : file.rays) frame.add(r.origin);
    for (const TracePath& p : paths) {
        for (const Hit& h : p.hits) frame.add(h.point);
    }
    for (const Mirror& m : file.scene.mirrors) {
        if (std::isfinite(m.aperture.outer)) {
            for (const Point& q : mirror_samples(m, frame)) frame.add(q);
        }
    }
    if (!std::isfinite(frame.min_x)) frame.add(Point(0.0, 0.0));
    const double tail = 0.5 * std::hypot(frame.width(), frame.height()) + 1e-9;
    for (const TracePath& p : paths) frame.add(p.final_ray.at(tail));
    SvgCanvas svg(frame.expanded(0.1));
    for (const Mirror& m : file.scene.mirrors) svg.clipped_curve(mirror_samples(m, svg.view()), "conic");
    draw_paths(svg, file.rays, paths, tail);
    return svg.finish(800, 600);
}

}  // namespace isoconic
