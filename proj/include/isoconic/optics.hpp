#pragma once

// Analytic ray tracing on conic mirrors and the Cassegrain two-mirror scene.
//
// Mirrors are two-sided. A mirror may be restricted to one hyperbola branch
// and to an annular aperture on its lateral coordinate (distance from the
// symmetry axis: canonical |x| for a parabola, canonical |y| otherwise).

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "isoconic/conic.hpp"
#include "isoconic/geometry.hpp"
#include "isoconic/tolerances.hpp"

namespace isoconic {

struct Ray {
    Point origin;
    Direction dir;

    Point at(double t) const { return origin + dir * t; }
};

struct RayHit {
    double t = 0.0;
    Point point;
};

/// Real intersections with t > tol.self_hit, ascending. Solves the canonical
/// implicit quadratic with the cancellation-free root pair (q/A, C/q); roots
/// closer than tol.root_merge are reported once. For hyperbolas, `branch`
/// keeps only hits on that branch.
std::vector<RayHit> intersect_ray(const Conic& conic, const Ray& ray,
                                  std::optional<Branch> branch = std::nullopt,
                                  const Tolerances& tol = default_tolerances);

/// Mirror reflection off the tangent line at an on-curve point.
Direction reflect_at(const Conic& conic, Point q, Direction incoming,
                     const Tolerances& tol = default_tolerances);

/// Angular deviation (radians) of the reflected beam from the focal property:
///   ellipse    beam from F1 must leave toward F2
///   parabola   beam travelling against the axis must leave toward the focus
///   hyperbola  beam from F1 must leave directly away from F2
double focal_property_error(const Conic& conic, Point q, const Tolerances& tol = default_tolerances);

enum class MirrorRole { primary, secondary, mirror };

std::string_view to_string(MirrorRole role) noexcept;
std::optional<MirrorRole> mirror_role_from_string(std::string_view s) noexcept;

struct Aperture {
    double inner = 0.0;
    double outer = std::numeric_limits<double>::infinity();

    bool contains(double lateral) const noexcept {
        const double r = lateral < 0.0 ? -lateral : lateral;
        return r >= inner && r <= outer;
    }
};

/// Signed distance of an on-curve point from the conic's symmetry axis.
double lateral_coordinate(const Conic& conic, Point q);

struct Mirror {
    Conic conic;
    MirrorRole role = MirrorRole::mirror;
    std::optional<Branch> branch;
    Aperture aperture;
};

struct Scene {
    std::vector<Mirror> mirrors;
};

struct Hit {
    Point point;
    double t = 0.0;
    Direction outgoing;
    std::size_t mirror = 0;
};

struct TracePath {
    std::vector<Hit> hits;
    Ray final_ray;
};

/// Nearest-hit-first reflection until nothing is hit or max_bounces is
/// reached. A miss on the first segment yields an empty path whose final ray
/// is the input ray.
TracePath trace(const Scene& scene, const Ray& ray, int max_bounces,
                const Tolerances& tol = default_tolerances);

struct CassegrainDesign {
    double focal_length = 1.0;
    double secondary_a = 0.36;
    double secondary_b = 0.48;
    /// Outer lateral radius of the secondary; also the obstruction radius.
    double secondary_radius = 0.3;
    double primary_radius = 1.0;
};

/// Parabolic primary in canonical pose and a hyperbolic secondary whose
/// focus F1 sits on the primary focus. The secondary uses its negative
/// branch, which faces the primary; light converging on F1 is sent to F2.
Scene make_cassegrain(const CassegrainDesign& design = {});

const Mirror& primary_mirror(const Scene& scene);
const Mirror& secondary_mirror(const Scene& scene);

/// True when the primary focus and the secondary focus nearest its branch
/// coincide within `tol`.
bool is_confocal(const Scene& scene, double tol = 1e-9);

/// The secondary's focus away from its mirror branch, where a confocal
/// Cassegrain scene brings axis-parallel light to a point.
Point cassegrain_focus(const Scene& scene);

/// Axis-parallel rays launched between the mirrors, spread uniformly over
/// the annulus [secondary radius, aperture] on both sides of the axis. A
/// single ray is launched on the axis.
std::vector<Ray> cassegrain_rays(const Scene& scene, int n_rays, double aperture);

struct SpotStats {
    double max_distance = std::numeric_limits<double>::quiet_NaN();
    double rms_distance = std::numeric_limits<double>::quiet_NaN();
    /// Rays that reflected off the primary and then the secondary.
    int traced = 0;
    /// Rays that did not follow primary -> secondary.
    int missed = 0;
};

/// Distance from `target` to the line of each ray's final segment after at
/// most two bounces (primary, then secondary).
SpotStats spot_statistics(const Scene& scene, std::span<const Ray> rays, Point target,
                          const Tolerances& tol = default_tolerances);

SpotStats cassegrain_spot(const Scene& scene, int n_rays, double aperture,
                          const Tolerances& tol = default_tolerances);

}  // namespace isoconic
