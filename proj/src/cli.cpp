#include "isoconic/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "isoconic/construction.hpp"
#include "isoconic/convergence.hpp"
#include "isoconic/error.hpp"
#include "isoconic/figures.hpp"
#include "isoconic/optics.hpp"
#include "isoconic/report.hpp"
#include "isoconic/scene_file.hpp"

namespace isoconic::cli {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct GlobalArgs {
    std::optional<double> tol;
    std::uint64_t seed = 1;
    std::string csv;
    std::string svg;
};

struct ConicArgs {
    std::vector<double> ellipse;
    double parabola = kUnset;
    std::vector<double> hyperbola;
    std::string branch = "positive";
    std::vector<double> translate;
    double rotate = 0.0;
};

void add_conic_options(CLI::App* sub, ConicArgs& c) {
    auto* e = sub->add_option("--ellipse", c.ellipse, "Ellipse semi-axes a,b")->delimiter(',')->expected(2);
    auto* p = sub->add_option("--parabola", c.parabola, "Parabola focal length p");
    auto* h = sub->add_option("--hyperbola", c.hyperbola, "Hyperbola semi-axes a,b")->delimiter(',')->expected(2);
    e->excludes(p)->excludes(h);
    p->excludes(h);
    sub->add_option("--branch", c.branch, "Hyperbola branch for curve parameters (positive|negative)")
        ->check(CLI::IsMember({"positive", "negative", "+", "-"}));
    sub->add_option("--translate", c.translate, "Placement translation x,y")->delimiter(',')->expected(2);
    sub->add_option("--rotate", c.rotate, "Placement rotation (radians)");
}

Conic build_conic(const ConicArgs& c) {
    Placement placement;
    if (!c.translate.empty()) placement = Placement(Point(c.translate[0], c.translate[1]), c.rotate);
    else if (c.rotate != 0.0) placement = Placement(Point(0.0, 0.0), c.rotate);
    if (!c.ellipse.empty()) return Conic::ellipse(c.ellipse[0], c.ellipse[1], placement);
    if (!std::isnan(c.parabola)) return Conic::parabola(c.parabola, placement);
    if (!c.hyperbola.empty()) return Conic::hyperbola(c.hyperbola[0], c.hyperbola[1], placement);
    throw Error(ErrorKind::invalid_argument, "specify one of --ellipse, --parabola or --hyperbola");
}

Branch branch_arg(const ConicArgs& c) {
    return (c.branch == "negative" || c.branch == "-") ? Branch::negative : Branch::positive;
}

Orientation orientation_arg(const std::string& s) {
    return s == "backward" ? Orientation::backward : Orientation::forward;
}

Tolerances tolerances(const GlobalArgs& g) {
    Tolerances t;
    if (g.tol) {
        if (!(*g.tol > 0.0)) throw Error(ErrorKind::invalid_argument, "--tol must be positive");
        t.on_curve = *g.tol;
    }
    return t;
}

struct PointArgs {
    std::vector<double> point;
    double anchor_param = kUnset;
};

void add_point_options(CLI::App* sub, PointArgs& p, bool allow_param) {
    auto* pt = sub->add_option("--point", p.point, "Point x,y")->delimiter(',')->expected(2);
    if (allow_param) {
        sub->add_option("--anchor-param", p.anchor_param, "Curve parameter of the point")->excludes(pt);
    }
}

Point resolve_point(const PointArgs& p, const Conic& conic, Branch branch) {
    if (!p.point.empty()) return {p.point[0], p.point[1]};
    if (!std::isnan(p.anchor_param)) return point_at(conic, p.anchor_param, branch);
    throw Error(ErrorKind::invalid_argument, "specify --point or --anchor-param");
}

std::string xy(Point p) { return format_human(p.x()) + " " + format_human(p.y()); }
std::string xy(Direction d) { return format_human(d.dx()) + " " + format_human(d.dy()); }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::invalid_argument, "cannot write " + path);
    f << content;
}

std::vector<Metric> parse_metrics(const std::vector<std::string>& names, const Conic& conic) {
    if (names.empty()) return default_metrics(conic);
    std::vector<Metric> out;
    for (const std::string& n : names) {
        const auto m = metric_from_string(n);
        if (!m) throw Error(ErrorKind::invalid_argument, "unknown metric '" + n + "'");
        out.push_back(*m);
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-equal-steps construction and reflection on conic sections", "isoconic"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--tol", g.tol, "On-curve tolerance");
    app.add_option("--seed", g.seed, "Seed for randomized self-checks");
    app.add_option("--csv", g.csv, "Write CSV output to this path");
    app.add_option("--svg", g.svg, "Write SVG output to this path");

    // residual
    ConicArgs residual_conic;
    PointArgs residual_point;
    auto* residual_cmd = app.add_subcommand("residual", "Signed locus residual of a point");
    add_conic_options(residual_cmd, residual_conic);
    add_point_options(residual_cmd, residual_point, false);

    // tangent
    ConicArgs tangent_conic;
    PointArgs tangent_point;
    auto* tangent_cmd = app.add_subcommand("tangent", "Analytic tangent and outward normal at a curve point");
    add_conic_options(tangent_cmd, tangent_conic);
    add_point_options(tangent_cmd, tangent_point, true);

    // walk
    ConicArgs walk_conic;
    PointArgs walk_point;
    double walk_delta = kUnset;
    std::string walk_orientation = "forward";
    bool walk_exact = false;
    auto* walk_cmd = app.add_subcommand("walk", "Two equal steps of length delta from an anchor");
    add_conic_options(walk_cmd, walk_conic);
    add_point_options(walk_cmd, walk_point, true);
    walk_cmd->add_option("--delta", walk_delta, "Step length")->required();
    walk_cmd->add_option("--orientation", walk_orientation)->check(CLI::IsMember({"forward", "backward"}));
    walk_cmd->add_flag("--exact-return", walk_exact, "Also solve the second step so B lies on the curve");

    // converge
    ConicArgs conv_conic;
    PointArgs conv_point;
    double conv_delta0 = 0.1;
    int conv_halvings = 6;
    std::vector<std::string> conv_metrics;
    std::string conv_orientation = "forward";
    auto* conv_cmd = app.add_subcommand("converge", "Halving sweep of delta with fitted convergence orders");
    add_conic_options(conv_cmd, conv_conic);
    add_point_options(conv_cmd, conv_point, true);
    conv_cmd->add_option("--delta0", conv_delta0, "Initial step length");
    conv_cmd->add_option("--halvings", conv_halvings, "Number of halvings");
    conv_cmd->add_option("--metrics", conv_metrics, "Comma-separated metric subset")->delimiter(',');
    conv_cmd->add_option("--orientation", conv_orientation)->check(CLI::IsMember({"forward", "backward"}));

    // reflect
    ConicArgs refl_conic;
    PointArgs refl_point;
    std::vector<double> refl_dir;
    int refl_self_check = 0;
    auto* refl_cmd = app.add_subcommand("reflect", "Reflect a beam off the curve, or self-check the focal property");
    add_conic_options(refl_cmd, refl_conic);
    add_point_options(refl_cmd, refl_point, true);
    refl_cmd->add_option("--dir", refl_dir, "Incoming direction dx,dy")->delimiter(',')->expected(2);
    refl_cmd->add_option("--self-check", refl_self_check, "Check the focal property at N random points");

    // trace
    std::string trace_scene;
    int trace_bounces = 0;
    auto* trace_cmd = app.add_subcommand("trace", "Trace the rays of a scene file");
    trace_cmd->add_option("scene", trace_scene, "Scene JSON file")->required();
    trace_cmd->add_option("--bounces", trace_bounces, "Override the scene's bounce cap");

    // figure
    std::string fig_id;
    ConicArgs fig_conic;
    double fig_delta = kUnset;
    double fig_param = kUnset;
    int fig_width = 0;
    int fig_height = 0;
    auto* fig_cmd = app.add_subcommand("figure", "Emit an SVG figure of the construction");
    fig_cmd->add_option("id", fig_id, "Figure id: " + figure_id_list())->required();
    add_conic_options(fig_cmd, fig_conic);
    fig_cmd->add_option("--delta", fig_delta, "Step length");
    fig_cmd->add_option("--anchor-param", fig_param, "Curve parameter of the anchor");
    fig_cmd->add_option("--width", fig_width, "Output width in pixels");
    fig_cmd->add_option("--height", fig_height, "Output height in pixels");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return 0;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "error[usage]: " << msg << '\n';
        return 2;
    }

    try {
        const Tolerances tol = tolerances(g);

        if (residual_cmd->parsed()) {
            const Conic conic = build_conic(residual_conic);
            out << format_human(residual(conic, resolve_point(residual_point, conic, Branch::positive))) << '\n';
        } else if (tangent_cmd->parsed()) {
            const Conic conic = build_conic(tangent_conic);
            const TangentNormal tn =
                tangent_normal(conic, resolve_point(tangent_point, conic, branch_arg(tangent_conic)), tol);
            out << "tangent " << xy(tn.tangent) << "\nnormal " << xy(tn.normal) << '\n';
        } else if (walk_cmd->parsed()) {
            const Conic conic = build_conic(walk_conic);
            const Point a = resolve_point(walk_point, conic, branch_arg(walk_conic));
            const Orientation o = orientation_arg(walk_orientation);
            const StepTriangle tri = two_step(conic, a, walk_delta, o, tol);
            out << "A " << xy(tri.a) << "\nD " << xy(tri.d) << "\nB " << xy(tri.b) << "\ndelta "
                << format_human(tri.delta) << "\nresidual_B " << format_human(tri.residual_b) << "\nleg1 "
                << xy(tri.leg1_dir) << "\nleg2 " << xy(tri.leg2_dir) << '\n';
            if (tri.degenerate) {
                out << "notice: degenerate construction (B == A); the apex reflector is undefined\n";
            } else {
                out << "reflected " << xy(reflect_through_apex(tri)) << '\n';
            }
            if (walk_exact) {
                const ExactReturnResult er = exact_return(conic, a, walk_delta, o, tol);
                out << "t_star " << format_human(er.t_star) << "\nB_exact " << xy(er.triangle.b)
                    << "\nresidual_B_exact " << format_human(er.triangle.residual_b) << '\n';
            }
        } else if (conv_cmd->parsed()) {
            const Conic conic = build_conic(conv_conic);
            SweepConfig cfg{conic, resolve_point(conv_point, conic, branch_arg(conv_conic)), conv_delta0,
                            conv_halvings, parse_metrics(conv_metrics, conic),
                            orientation_arg(conv_orientation)};
            const ConvergenceReport report = run_sweep(cfg, tol);
            std::ostringstream csv;
            write_csv(csv, report);
            if (g.csv.empty()) {
                out << csv.str();
            } else {
                write_file(g.csv, csv.str());
                out << "wrote " << report.rows.size() << " rows to " << g.csv << '\n';
            }
        } else if (refl_cmd->parsed()) {
            const Conic conic = build_conic(refl_conic);
            if (refl_self_check > 0) {
                std::mt19937_64 rng(g.seed);
                std::uniform_real_distribution<double> unit(0.0, 1.0);
                double worst = 0.0;
                for (int i = 0; i < refl_self_check; ++i) {
                    const double u = unit(rng);
                    Point q;
                    switch (conic.kind()) {
                        case ConicKind::ellipse: q = point_at(conic, 2.0 * std::numbers::pi * u); break;
                        case ConicKind::parabola: q = point_at(conic, (10.0 * u - 5.0) * conic.scale()); break;
                        case ConicKind::hyperbola:
                            q = point_at(conic, 4.0 * u - 2.0,
                                         unit(rng) < 0.5 ? Branch::negative : Branch::positive);
                            break;
                    }
                    worst = std::max(worst, focal_property_error(conic, q, tol));
                }
                out << "max_focal_error " << format_human(worst) << " over " << refl_self_check << " points\n";
            } else {
                const Point q = resolve_point(refl_point, conic, branch_arg(refl_conic));
                if (refl_dir.empty()) throw Error(ErrorKind::invalid_argument, "specify --dir or --self-check");
                const Direction outgoing = reflect_at(conic, q, Direction(refl_dir[0], refl_dir[1]), tol);
                out << "outgoing " << xy(outgoing) << "\nfocal_error "
                    << format_human(focal_property_error(conic, q, tol)) << '\n';
            }
        } else if (trace_cmd->parsed()) {
            SceneFile file = load_scene(trace_scene);
            if (g.tol) file.options.tolerances.on_curve = tol.on_curve;
            const int bounces = trace_bounces > 0 ? trace_bounces : file.options.max_bounces;
            std::vector<TracePath> paths;
            for (const Ray& r : file.rays) paths.push_back(trace(file.scene, r, bounces, file.options.tolerances));
            out << "rays " << paths.size() << '\n';
            for (std::size_t i = 0; i < paths.size(); ++i) {
                out << "ray " << i << ": " << paths[i].hits.size() << " hits\n";
                for (const Hit& h : paths[i].hits) {
                    out << "  hit mirror " << h.mirror << " (" << to_string(file.scene.mirrors[h.mirror].role)
                        << ") at " << xy(h.point) << " outgoing " << xy(h.outgoing) << '\n';
                }
                out << "  final " << xy(paths[i].final_ray.origin) << " dir " << xy(paths[i].final_ray.dir) << '\n';
            }
            const auto has_role = [&](MirrorRole r) {
                return std::any_of(file.scene.mirrors.begin(), file.scene.mirrors.end(),
                                   [r](const Mirror& m) { return m.role == r; });
            };
            if (has_role(MirrorRole::primary) && has_role(MirrorRole::secondary) && !file.rays.empty()) {
                const Point target = cassegrain_focus(file.scene);
                const SpotStats s = spot_statistics(file.scene, file.rays, target, file.options.tolerances);
                out << "spot focus " << xy(target) << " max " << format_human(s.max_distance) << " rms "
                    << format_human(s.rms_distance) << " traced " << s.traced << " missed " << s.missed << '\n';
            }
            if (!g.svg.empty()) write_file(g.svg, render_trace(file, paths));
        } else if (fig_cmd->parsed()) {
            const auto id = figure_from_string(fig_id);
            if (!id) {
                throw Error(ErrorKind::invalid_argument,
                            "unknown figure id '" + fig_id + "' (valid: " + figure_id_list() + ")");
            }
            FigureSpec spec = default_figure_spec(*id);
            const bool conic_given =
                !fig_conic.ellipse.empty() || !std::isnan(fig_conic.parabola) || !fig_conic.hyperbola.empty();
            if (conic_given) spec.conic = build_conic(fig_conic);
            spec.branch = branch_arg(fig_conic);
            if (!std::isnan(fig_delta)) spec.delta = fig_delta;
            if (!std::isnan(fig_param)) spec.anchor_param = fig_param;
            if (fig_width > 0) spec.width = fig_width;
            if (fig_height > 0) spec.height = fig_height;
            const std::string svg = render_figure(spec);
            if (g.svg.empty()) {
                out << svg;
            } else {
                write_file(g.svg, svg);
                out << "wrote " << g.svg << '\n';
            }
        }
    } catch (const Error& e) {
        err << "error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error[internal]: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace isoconic::cli
