#pragma once

namespace isoconic {

/// Numerical thresholds shared across modules. Everything that compares
/// against a tolerance reads it from here or from a caller-supplied copy.
struct Tolerances {
    /// |residual| allowed for a point to count as lying on a conic.
    double on_curve = 1e-9;
    /// Vectors shorter than this cannot be normalized.
    double min_direction_norm = 1e-300;
    /// A step triangle whose base is shorter than this is degenerate.
    double degenerate_base = 1e-12;
    /// Ray hits closer than this to the ray origin are ignored.
    double self_hit = 1e-9;
    /// Quadratic roots closer than this (in ray parameter) are merged.
    double root_merge = 1e-7;
    /// Relative interval width at which bisection stops.
    double bisection_rel = 1e-14;
    int bisection_max_iter = 200;
    /// Coarse samples and Newton cap for nearest-point projection.
    int projection_grid = 257;
    int projection_max_iter = 64;
    /// Angular tolerance for the foot-of-normal condition (radians).
    double projection_angle = 1e-9;
    /// Noise floor for convergence metrics, in multiples of machine epsilon.
    double noise_floor_eps = 100.0;
};

inline constexpr Tolerances default_tolerances{};

}  // namespace isoconic
