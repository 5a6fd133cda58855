#include "isoconic/conic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "isoconic/error.hpp"

namespace isoconic {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::invalid_argument, what);
}

}  // namespace

Ellipse::Ellipse(double semi_major, double semi_minor) : a(semi_major), b(semi_minor) {
    require(std::isfinite(a) && std::isfinite(b), "ellipse axes must be finite");
    require(b > 0.0 && a >= b, "ellipse requires a >= b > 0");
}

double Ellipse::focal_half_distance() const noexcept {
    return std::sqrt((a - b) * (a + b));
}

Parabola::Parabola(double focal_length) : p(focal_length) {
    require(std::isfinite(p) && p > 0.0, "parabola requires p > 0");
}

Hyperbola::Hyperbola(double semi_transverse, double semi_conjugate)
    : a(semi_transverse), b(semi_conjugate) {
    require(std::isfinite(a) && std::isfinite(b), "hyperbola axes must be finite");
    require(a > 0.0 && b > 0.0, "hyperbola requires a > 0 and b > 0");
}

double Hyperbola::focal_half_distance() const noexcept { return std::hypot(a, b); }

// Placement

Placement::Placement(Point translation, double rotation)
    : translation_(translation), rotation_(rotation) {
    require(std::isfinite(rotation), "placement rotation must be finite");
    cos_ = std::cos(rotation);
    sin_ = std::sin(rotation);
}

Vec2 Placement::vector_to_world(Vec2 v) const noexcept {
    return {cos_ * v.x - sin_ * v.y, sin_ * v.x + cos_ * v.y};
}

Vec2 Placement::vector_to_canonical(Vec2 v) const noexcept {
    return {cos_ * v.x + sin_ * v.y, -sin_ * v.x + cos_ * v.y};
}

Point Placement::to_world(Point canonical) const {
    return translation_ + vector_to_world(canonical.vec());
}

Point Placement::to_canonical(Point world) const {
    const Vec2 v = vector_to_canonical(world - translation_);
    return {v.x, v.y};
}

Placement Placement::inverse() const {
    const Vec2 t = vector_to_canonical(translation_.vec());
    return {Point(-t.x, -t.y), -rotation_};
}

Placement Placement::compose(const Placement& inner) const {
    return {to_world(inner.translation_), rotation_ + inner.rotation_};
}

// Conic

double Conic::scale() const noexcept {
    return std::visit(overloaded{
                          [](const Ellipse& e) { return e.a + e.b; },
                          [](const Parabola& p) { return p.p; },
                          [](const Hyperbola& h) { return h.a + h.b; },
                      },
                      shape_);
}

FocalPair foci(const Conic& conic) {
    const auto& pl = conic.placement();
    return std::visit(
        overloaded{
            [&](const Ellipse& e) -> FocalPair {
                const double c = e.focal_half_distance();
                return {pl.to_world(Point{-c, 0.0}), pl.to_world(Point{c, 0.0})};
            },
            [](const Parabola&) -> FocalPair {
                throw Error(ErrorKind::unsupported_variant, "a parabola has a single focus");
            },
            [&](const Hyperbola& h) -> FocalPair {
                const double c = h.focal_half_distance();
                return {pl.to_world(Point{-c, 0.0}), pl.to_world(Point{c, 0.0})};
            },
        },
        conic.shape());
}

namespace {

const Parabola& as_parabola(const Conic& conic) {
    if (const auto* p = std::get_if<Parabola>(&conic.shape())) return *p;
    throw Error(ErrorKind::unsupported_variant, "operation requires a parabola");
}

Branch canonical_branch(Point c) {
    if (c.x() > 0.0) return Branch::positive;
    if (c.x() < 0.0) return Branch::negative;
    throw Error(ErrorKind::no_branch,
                "point on the hyperbola's conjugate axis belongs to no branch");
}

double sign_of(Branch b) { return b == Branch::positive ? 1.0 : -1.0; }

}  // namespace

Point parabola_focus(const Conic& conic) {
    const auto& par = as_parabola(conic);
    return conic.placement().to_world(Point{0.0, par.p});
}

Line parabola_directrix(const Conic& conic) {
    const auto& par = as_parabola(conic);
    return {conic.placement().to_world(Point{0.0, -par.p}), conic.placement().to_world(Direction(1.0, 0.0))};
}

Direction parabola_axis(const Conic& conic) {
    as_parabola(conic);
    return conic.placement().to_world(Direction(0.0, 1.0));
}

Branch branch_of(const Conic& conic, Point q) {
    if (conic.kind() != ConicKind::hyperbola) {
        throw Error(ErrorKind::unsupported_variant, "only hyperbolas have branches");
    }
    return canonical_branch(conic.placement().to_canonical(q));
}

double residual(const Conic& conic, Point q) {
    const Point c = conic.placement().to_canonical(q);
    return std::visit(
        overloaded{
            [&](const Ellipse& e) {
                const double f = e.focal_half_distance();
                return std::hypot(c.x() + f, c.y()) + std::hypot(c.x() - f, c.y()) - 2.0 * e.a;
            },
            [&](const Parabola& p) { return std::hypot(c.x(), c.y() - p.p) - (c.y() + p.p); },
            [&](const Hyperbola& h) {
                const double f = h.focal_half_distance();
                const double s = sign_of(canonical_branch(c));
                const double far = std::hypot(c.x() + s * f, c.y());
                const double near = std::hypot(c.x() - s * f, c.y());
                return far - near - 2.0 * h.a;
            },
        },
        conic.shape());
}

double implicit_value(const Conic& conic, Point q) {
    const Point c = conic.placement().to_canonical(q);
    const double x = c.x();
    const double y = c.y();
    return std::visit(overloaded{
                          [&](const Ellipse& e) { return x * x / (e.a * e.a) + y * y / (e.b * e.b) - 1.0; },
                          [&](const Parabola& p) { return x * x - 4.0 * p.p * y; },
                          [&](const Hyperbola& h) { return x * x / (h.a * h.a) - y * y / (h.b * h.b) - 1.0; },
                      },
                      conic.shape());
}

Vec2 implicit_gradient(const Conic& conic, Point q) {
    const Point c = conic.placement().to_canonical(q);
    const double x = c.x();
    const double y = c.y();
    const Vec2 g = std::visit(overloaded{
                                  [&](const Ellipse& e) {
                                      return Vec2{2.0 * x / (e.a * e.a), 2.0 * y / (e.b * e.b)};
                                  },
                                  [&](const Parabola& p) { return Vec2{2.0 * x, -4.0 * p.p}; },
                                  [&](const Hyperbola& h) {
                                      return Vec2{2.0 * x / (h.a * h.a), -2.0 * y / (h.b * h.b)};
                                  },
                              },
                              conic.shape());
    return conic.placement().vector_to_world(g);
}

TangentNormal tangent_normal(const Conic& conic, Point q, const Tolerances& tol) {
    const double r = residual(conic, q);
    if (!(std::abs(r) <= tol.on_curve)) {
        throw Error(ErrorKind::off_curve,
                    "point is off the curve (residual " + std::to_string(r) + ")");
    }
    const Direction normal(implicit_gradient(conic, q));
    return {normal.rotated_cw(), normal};
}

Point point_at(const Conic& conic, double t, Branch branch) {
    const Point c = std::visit(
        overloaded{
            [&](const Ellipse& e) { return Point(e.a * std::cos(t), e.b * std::sin(t)); },
            [&](const Parabola& p) { return Point(t, t * t / (4.0 * p.p)); },
            [&](const Hyperbola& h) {
                return Point(sign_of(branch) * h.a * std::cosh(t), h.b * std::sinh(t));
            },
        },
        conic.shape());
    return conic.placement().to_world(c);
}

// Nearest-point projection

namespace {

/// Canonical parametric curve with first and second derivatives.
struct CurveJet {
    Vec2 p;
    Vec2 d1;
    Vec2 d2;
};

struct ParamCurve {
    Conic::Shape shape;
    double sigma = 1.0;  // hyperbola branch sign

    CurveJet eval(double t) const {
        return std::visit(
            overloaded{
                [&](const Ellipse& e) {
                    const double ct = std::cos(t);
                    const double st = std::sin(t);
                    return CurveJet{{e.a * ct, e.b * st}, {-e.a * st, e.b * ct}, {-e.a * ct, -e.b * st}};
                },
                [&](const Parabola& p) {
                    return CurveJet{{t, t * t / (4.0 * p.p)}, {1.0, t / (2.0 * p.p)}, {0.0, 1.0 / (2.0 * p.p)}};
                },
                [&](const Hyperbola& h) {
                    const double ch = std::cosh(t);
                    const double sh = std::sinh(t);
                    return CurveJet{{sigma * h.a * ch, h.b * sh},
                                    {sigma * h.a * sh, h.b * ch},
                                    {sigma * h.a * ch, h.b * sh}};
                },
            },
            shape);
    }
};

/// Foot-of-normal function g(t) = (P(t) - q) . P'(t) and its derivative.
struct FootCondition {
    const ParamCurve& curve;
    Vec2 q;

    std::pair<double, double> operator()(double t) const {
        const CurveJet j = curve.eval(t);
        const Vec2 r = j.p - q;
        return {dot(r, j.d1), dot(j.d1, j.d1) + dot(r, j.d2)};
    }
    double dist2(double t) const {
        const Vec2 r = curve.eval(t).p - q;
        return dot(r, r);
    }
};

/// Newton on g inside [lo, hi] with bisection fallback whenever the Newton
/// step leaves the bracket or fails to halve the previous step.
std::optional<double> solve_foot(const FootCondition& g, double lo, double hi, double start,
                                 int max_iter) {
    double glo = g(lo).first;
    double ghi = g(hi).first;
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) == (ghi > 0.0)) return std::nullopt;
    if (glo > 0.0) std::swap(lo, hi);  // keep g(lo) < 0 < g(hi)

    double t = start;
    double step_old = std::abs(hi - lo);
    double step = step_old;
    auto [f, df] = g(t);
    for (int it = 0; it < max_iter; ++it) {
        const bool newton_leaves = ((t - hi) * df - f) * ((t - lo) * df - f) > 0.0;
        if (newton_leaves || std::abs(2.0 * f) > std::abs(step_old * df)) {
            step_old = step;
            step = 0.5 * (hi - lo);
            t = lo + step;
        } else {
            step_old = step;
            step = f / df;
            t -= step;
        }
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(t))) {
            return t;
        }
        std::tie(f, df) = g(t);
        if (f == 0.0) return t;
        if (f < 0.0) {
            lo = t;
        } else {
            hi = t;
        }
    }
    return std::nullopt;
}

}  // namespace

Point project_to_curve(const Conic& conic, Point q, const Tolerances& tol) {
    const Point qc = conic.placement().to_canonical(q);
    ParamCurve curve{conic.shape()};
    double t_min = 0.0;
    double t_max = 0.0;
    bool periodic = false;

    std::visit(overloaded{
                   [&](const Ellipse&) {
                       t_max = 2.0 * std::numbers::pi;
                       periodic = true;
                   },
                   [&](const Parabola& p) {
                       // The nearest point is no farther from q than the vertex is.
                       const double w = std::abs(qc.x()) + qc.vec().norm() + p.p;
                       t_min = -w;
                       t_max = w;
                   },
                   [&](const Hyperbola& h) {
                       curve.sigma = qc.x() < 0.0 ? -1.0 : 1.0;
                       const double d0 = std::hypot(qc.x() - curve.sigma * h.a, qc.y());
                       const double w = std::asinh((std::abs(qc.y()) + d0) / h.b) + 1.0;
                       t_min = -w;
                       t_max = w;
                   },
               },
               conic.shape());

    const FootCondition g{curve, qc.vec()};
    const int n = tol.projection_grid;
    std::vector<double> ts(static_cast<std::size_t>(n));
    std::vector<double> d2(ts.size());
    // Periodic grids omit the duplicate endpoint.
    const double h = (t_max - t_min) / (periodic ? n : n - 1);
    for (int i = 0; i < n; ++i) {
        ts[i] = t_min + h * i;
        d2[i] = g.dist2(ts[i]);
    }

    double best_d2 = std::numeric_limits<double>::infinity();
    std::optional<Vec2> best;
    for (int i = 0; i < n; ++i) {
        const int prev = periodic ? (i + n - 1) % n : std::max(i - 1, 0);
        const int next = periodic ? (i + 1) % n : std::min(i + 1, n - 1);
        if (d2[i] > d2[prev] || d2[i] > d2[next]) continue;
        const double lo = (periodic || i > 0) ? ts[i] - h : ts[i];
        const double hi = (periodic || i < n - 1) ? ts[i] + h : ts[i];
        std::optional<double> t = solve_foot(g, lo, hi, ts[i], tol.projection_max_iter);
        if (!t && (i == 0 || i == n - 1) && !periodic) t = ts[i];  // window boundary minimum
        if (!t) {
            throw Error(ErrorKind::non_convergence, "nearest-point iteration did not converge");
        }
        const double dd = g.dist2(*t);
        if (dd < best_d2) {
            best_d2 = dd;
            best = curve.eval(*t).p;
        }
    }
    if (!best) throw Error(ErrorKind::non_convergence, "no nearest-point candidate found");
    return conic.placement().to_world(Point{best->x, best->y});
}

}  // namespace isoconic
