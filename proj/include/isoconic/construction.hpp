#pragma once

// The two-equal-steps walk along a conic.
//
// From a curve point A take a step of length delta to the apex D, then a
// second step of length delta to B. The step directions are chosen so the
// locus quantity is unchanged to first order:
//   ellipse    away from F1, then toward F2
//   parabola   toward the directrix, then toward the focus
//   hyperbola  away from F1, then away from F2
// Orientation::backward swaps the two foci (for the parabola it walks the
// reversed legs: away from the focus, then away from the directrix).
//
// |D - A| == |B - D| == delta, so A-D-B is isosceles with apex D, and the
// line through D parallel to AB reflects leg 1 onto leg 2.

#include "isoconic/conic.hpp"
#include "isoconic/geometry.hpp"
#include "isoconic/tolerances.hpp"

namespace isoconic {

enum class Orientation { forward, backward };

struct StepTriangle {
    Point a;
    Point d;
    Point b;
    double delta = 0.0;
    double residual_b = 0.0;
    Direction leg1_dir;
    Direction leg2_dir;
    Orientation orientation = Orientation::forward;
    /// The legs are anti-parallel (B == A), as happens at an axis vertex.
    /// The construction is still valid; the apex reflector is not.
    bool degenerate = false;
};

StepTriangle two_step(const Conic& conic, Point a, double delta,
                      Orientation orientation = Orientation::forward,
                      const Tolerances& tol = default_tolerances);

/// Line through the apex D parallel to the base AB. The base direction is
/// taken from the legs, B - A = delta * (leg1 + leg2), which avoids the
/// cancellation in subtracting two nearby points when delta is small.
/// Throws degenerate_triangle when B == A.
Line apex_reflector(const StepTriangle& tri);

/// leg1 reflected off the apex reflector. Checks that the result equals leg2
/// to 1e-12 componentwise and throws internal if it does not.
Direction reflect_through_apex(const StepTriangle& tri);

struct FocalChangeError {
    /// |proj(D-A onto leg2)| - |proj(B-D onto leg1)|; zero up to rounding.
    double proj_gap = 0.0;
    /// Angle between the directions from A and from B to the second-step focus.
    double parallelism_error = 0.0;
};

/// Two-focus conics only; parabolas throw unsupported_variant. Degenerate
/// triangles are accepted (both quantities are then zero up to rounding).
FocalChangeError focal_change_error(const StepTriangle& tri, const Conic& conic);

struct ExactReturnResult {
    /// Same first step as two_step; the second leg has length t_star, so this
    /// triangle is isosceles only up to |t_star - delta|.
    StepTriangle triangle;
    double t_star = 0.0;
};

/// Two-step walk whose second step length is solved by bisection on
/// residual(D + t * leg2) = 0 over [delta/2, 2 delta]. Throws
/// bracketing_failure when the residual does not change sign there.
ExactReturnResult exact_return(const Conic& conic, Point a, double delta,
                               Orientation orientation = Orientation::forward,
                               const Tolerances& tol = default_tolerances);

/// The focus the second leg points toward (ellipse, parabola) or away from
/// (hyperbola) for the given orientation. For the backward parabola walk this
/// is the focus the first leg leaves from.
Point second_step_focus(const Conic& conic, Orientation orientation);

}  // namespace isoconic
