#include "isoconic/construction.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "isoconic/error.hpp"

namespace isoconic {

namespace {

struct StepDirections {
    Direction first;
    // Evaluated at the apex.
    Direction second;
};

void check_anchor(const Conic& conic, Point a, double delta, const Tolerances& tol) {
    if (!std::isfinite(delta) || !(delta > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "step length delta must be positive");
    }
    const double r = residual(conic, a);
    if (!(std::abs(r) <= tol.on_curve)) {
        throw Error(ErrorKind::off_curve,
                    "anchor is off the curve (residual " + std::to_string(r) + ")");
    }
}

Direction unit_or_throw(Vec2 v, const char* what) {
    try {
        return Direction(v);
    } catch (const Error&) {
        throw Error(ErrorKind::degenerate_direction, what);
    }
}

Direction first_step(const Conic& conic, Point a, Orientation orientation) {
    if (conic.kind() == ConicKind::parabola) {
        if (orientation == Orientation::forward) return -parabola_axis(conic);
        return unit_or_throw(a - parabola_focus(conic), "anchor coincides with the focus");
    }
    auto [f1, f2] = foci(conic);
    if (orientation == Orientation::backward) std::swap(f1, f2);
    return unit_or_throw(a - f1, "anchor coincides with the first focus");
}

Direction second_step(const Conic& conic, Point d, Orientation orientation) {
    switch (conic.kind()) {
        case ConicKind::parabola:
            if (orientation == Orientation::forward) {
                return unit_or_throw(parabola_focus(conic) - d, "apex coincides with the focus");
            }
            return parabola_axis(conic);
        case ConicKind::ellipse:
            return unit_or_throw(second_step_focus(conic, orientation) - d,
                                 "apex coincides with the second focus");
        case ConicKind::hyperbola:
            return unit_or_throw(d - second_step_focus(conic, orientation),
                                 "apex coincides with the second focus");
    }
    throw Error(ErrorKind::internal, "unknown conic kind");
}

bool is_degenerate(Point a, Point b, Direction leg1, Direction leg2, const Tolerances& tol) {
    return (leg1.vec() + leg2.vec()).norm() <= tol.degenerate_base ||
           distance(a, b) <= tol.degenerate_base;
}

}  // namespace

Point second_step_focus(const Conic& conic, Orientation orientation) {
    if (conic.kind() == ConicKind::parabola) return parabola_focus(conic);
    const auto [f1, f2] = foci(conic);
    return orientation == Orientation::forward ? f2 : f1;
}

StepTriangle two_step(const Conic& conic, Point a, double delta, Orientation orientation,
                      const Tolerances& tol) {
    check_anchor(conic, a, delta, tol);
    const Direction u1 = first_step(conic, a, orientation);
    const Point d = a + u1 * delta;
    const Direction u2 = second_step(conic, d, orientation);
    const Point b = d + u2 * delta;
    return StepTriangle{
        .a = a,
        .d = d,
        .b = b,
        .delta = delta,
        .residual_b = residual(conic, b),
        .leg1_dir = u1,
        .leg2_dir = u2,
        .orientation = orientation,
        .degenerate = is_degenerate(a, b, u1, u2, tol),
    };
}

Line apex_reflector(const StepTriangle& tri) {
    if (tri.degenerate) {
        throw Error(ErrorKind::degenerate_triangle,
                    "degenerate construction: B coincides with A, the base has no direction");
    }
    return {tri.d, Direction(tri.leg1_dir.vec() + tri.leg2_dir.vec())};
}

Direction reflect_through_apex(const StepTriangle& tri) {
    const Direction out = reflect_direction(tri.leg1_dir, apex_reflector(tri));
    constexpr double identity_tol = 1e-12;
    if (std::abs(out.dx() - tri.leg2_dir.dx()) > identity_tol ||
        std::abs(out.dy() - tri.leg2_dir.dy()) > identity_tol) {
        throw Error(ErrorKind::internal, "apex reflection does not reproduce the second leg");
    }
    return out;
}

FocalChangeError focal_change_error(const StepTriangle& tri, const Conic& conic) {
    if (conic.kind() == ConicKind::parabola) {
        throw Error(ErrorKind::unsupported_variant,
                    "the projection lemma is stated for two-focus conics");
    }
    const double first = std::abs(scalar_projection(tri.d - tri.a, tri.leg2_dir));
    const double second = std::abs(scalar_projection(tri.b - tri.d, tri.leg1_dir));
    const Point f2 = second_step_focus(conic, tri.orientation);
    return {
        .proj_gap = first - second,
        .parallelism_error = angle_between(Direction::between(tri.a, f2), Direction::between(tri.b, f2)),
    };
}

ExactReturnResult exact_return(const Conic& conic, Point a, double delta, Orientation orientation,
                               const Tolerances& tol) {
    check_anchor(conic, a, delta, tol);
    const Direction u1 = first_step(conic, a, orientation);
    const Point d = a + u1 * delta;
    const Direction u2 = second_step(conic, d, orientation);
    const auto f = [&](double t) { return residual(conic, d + u2 * t); };

    double t_star = delta;
    if (f(delta) != 0.0) {
        double lo = 0.5 * delta;
        double hi = 2.0 * delta;
        double f_lo = f(lo);
        const double f_hi = f(hi);
        if (f_lo == 0.0) {
            t_star = lo;
        } else if (f_hi == 0.0) {
            t_star = hi;
        } else if ((f_lo > 0.0) == (f_hi > 0.0)) {
            throw Error(ErrorKind::bracketing_failure,
                        "second-step residual has no sign change on [delta/2, 2 delta]; "
                        "delta is too large for the local curvature");
        } else {
            double f_hi_cur = f_hi;
            for (int it = 0; it < tol.bisection_max_iter; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double f_mid = f(mid);
                if (f_mid == 0.0) {
                    lo = hi = mid;
                    f_lo = f_hi_cur = 0.0;
                    break;
                }
                if ((f_mid > 0.0) == (f_lo > 0.0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                    f_hi_cur = f_mid;
                }
                if (hi - lo <= tol.bisection_rel * hi) break;
            }
            t_star = std::abs(f_lo) <= std::abs(f_hi_cur) ? lo : hi;
        }
    }

    const Point b = d + u2 * t_star;
    return {
        .triangle =
            StepTriangle{
                .a = a,
                .d = d,
                .b = b,
                .delta = delta,
                .residual_b = residual(conic, b),
                .leg1_dir = u1,
                .leg2_dir = u2,
                .orientation = orientation,
                .degenerate = is_degenerate(a, b, u1, u2, tol),
            },
        .t_star = t_star,
    };
}

}  // namespace isoconic
