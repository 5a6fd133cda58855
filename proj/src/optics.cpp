#include "isoconic/optics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "isoconic/error.hpp"

namespace isoconic {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

struct Quadratic {
    double a;
    double b;
    double c;
};

Quadratic substitute(const Conic& conic, Vec2 o, Vec2 d) {
    return std::visit(overloaded{
                          [&](const Ellipse& e) {
                              const double ia = 1.0 / (e.a * e.a);
                              const double ib = 1.0 / (e.b * e.b);
                              return Quadratic{d.x * d.x * ia + d.y * d.y * ib,
                                               2.0 * (o.x * d.x * ia + o.y * d.y * ib),
                                               o.x * o.x * ia + o.y * o.y * ib - 1.0};
                          },
                          [&](const Parabola& p) {
                              return Quadratic{d.x * d.x, 2.0 * o.x * d.x - 4.0 * p.p * d.y,
                                               o.x * o.x - 4.0 * p.p * o.y};
                          },
                          [&](const Hyperbola& h) {
                              const double ia = 1.0 / (h.a * h.a);
                              const double ib = 1.0 / (h.b * h.b);
                              return Quadratic{d.x * d.x * ia - d.y * d.y * ib,
                                               2.0 * (o.x * d.x * ia - o.y * d.y * ib),
                                               o.x * o.x * ia - o.y * o.y * ib - 1.0};
                          },
                      },
                      conic.shape());
}

std::vector<double> real_roots(const Quadratic& q, double merge) {
    if (q.a == 0.0) {
        if (q.b == 0.0) return {};
        return {-q.c / q.b};
    }
    const double bb = q.b * q.b;
    const double ac4 = 4.0 * q.a * q.c;
    const double disc = bb - ac4;
    // A discriminant within its own rounding error is a tangency; its square
    // root would otherwise show up as a spurious sqrt(eps)-sized separation.
    const double disc_noise = 16.0 * std::numeric_limits<double>::epsilon() * (bb + std::abs(ac4));
    // Root separation (or twice the imaginary part) in ray-parameter units.
    const double separation = std::sqrt(std::abs(disc)) / std::abs(q.a);
    if (std::abs(disc) <= disc_noise || separation < merge) return {-q.b / (2.0 * q.a)};
    if (disc < 0.0) return {};
    const double k = -0.5 * (q.b + std::copysign(std::sqrt(disc), q.b));
    return {k / q.a, q.c / k};
}

}  // namespace

std::vector<RayHit> intersect_ray(const Conic& conic, const Ray& ray, std::optional<Branch> branch,
                                  const Tolerances& tol) {
    const Placement& pl = conic.placement();
    const Vec2 o = pl.to_canonical(ray.origin).vec();
    const Vec2 d = pl.vector_to_canonical(ray.dir.vec());

    std::vector<RayHit> hits;
    for (const double t : real_roots(substitute(conic, o, d), tol.root_merge)) {
        if (!(t > tol.self_hit) || !std::isfinite(t)) continue;
        if (branch && conic.kind() == ConicKind::hyperbola) {
            const double x = o.x + t * d.x;
            if ((x > 0.0) != (*branch == Branch::positive)) continue;
        }
        hits.push_back({t, ray.at(t)});
    }
    std::sort(hits.begin(), hits.end(), [](const RayHit& l, const RayHit& r) { return l.t < r.t; });
    return hits;
}

Direction reflect_at(const Conic& conic, Point q, Direction incoming, const Tolerances& tol) {
    const TangentNormal tn = tangent_normal(conic, q, tol);
    return reflect_direction(incoming, Line{q, tn.tangent});
}

double focal_property_error(const Conic& conic, Point q, const Tolerances& tol) {
    const auto from = [](Point src, Point dst) {
        if (src == dst) throw Error(ErrorKind::invalid_argument, "point coincides with a focus");
        return Direction::between(src, dst);
    };
    switch (conic.kind()) {
        case ConicKind::ellipse: {
            const auto [f1, f2] = foci(conic);
            const Direction out = reflect_at(conic, q, from(f1, q), tol);
            return angle_between(out, from(q, f2));
        }
        case ConicKind::parabola: {
            const Direction out = reflect_at(conic, q, -parabola_axis(conic), tol);
            return angle_between(out, from(q, parabola_focus(conic)));
        }
        case ConicKind::hyperbola: {
            const auto [f1, f2] = foci(conic);
            const Direction out = reflect_at(conic, q, from(f1, q), tol);
            return angle_between(out, from(f2, q));
        }
    }
    throw Error(ErrorKind::internal, "unknown conic kind");
}

std::string_view to_string(MirrorRole role) noexcept {
    switch (role) {
        case MirrorRole::primary: return "primary";
        case MirrorRole::secondary: return "secondary";
        case MirrorRole::mirror: return "mirror";
    }
    return "mirror";
}

std::optional<MirrorRole> mirror_role_from_string(std::string_view s) noexcept {
    if (s == "primary") return MirrorRole::primary;
    if (s == "secondary") return MirrorRole::secondary;
    if (s == "mirror") return MirrorRole::mirror;
    return std::nullopt;
}

double lateral_coordinate(const Conic& conic, Point q) {
    const Point c = conic.placement().to_canonical(q);
    return conic.kind() == ConicKind::parabola ? c.x() : c.y();
}

TracePath trace(const Scene& scene, const Ray& ray, int max_bounces, const Tolerances& tol) {
    if (max_bounces < 1) throw Error(ErrorKind::invalid_argument, "max_bounces must be >= 1");
    TracePath path{{}, ray};
    Ray current = ray;
    for (int bounce = 0; bounce < max_bounces; ++bounce) {
        std::optional<RayHit> nearest;
        std::size_t nearest_mirror = 0;
        for (std::size_t m = 0; m < scene.mirrors.size(); ++m) {
            const Mirror& mirror = scene.mirrors[m];
            for (const RayHit& h : intersect_ray(mirror.conic, current, mirror.branch, tol)) {
                if (!mirror.aperture.contains(lateral_coordinate(mirror.conic, h.point))) continue;
                if (!nearest || h.t < nearest->t) {
                    nearest = h;
                    nearest_mirror = m;
                }
                break;  // hits are sorted; the first inside the aperture is this mirror's nearest
            }
        }
        if (!nearest) break;
        const Direction out =
            reflect_at(scene.mirrors[nearest_mirror].conic, nearest->point, current.dir, tol);
        path.hits.push_back({nearest->point, nearest->t, out, nearest_mirror});
        current = Ray{nearest->point, out};
        path.final_ray = current;
    }
    return path;
}

// Cassegrain

Scene make_cassegrain(const CassegrainDesign& design) {
    const Parabola primary(design.focal_length);
    const Hyperbola secondary(design.secondary_a, design.secondary_b);
    if (!(design.secondary_radius > 0.0) || !(design.primary_radius > design.secondary_radius)) {
        throw Error(ErrorKind::invalid_argument,
                    "cassegrain requires 0 < secondary radius < primary radius");
    }
    const double c = secondary.focal_half_distance();
    // Rotating by -pi/2 sends canonical (-c, 0) to +y; centering at p - c puts F1 on the focus.
    const Placement pose(Point(0.0, design.focal_length - c), -std::numbers::pi / 2.0);
    Scene scene{{
        Mirror{Conic(primary), MirrorRole::primary, std::nullopt, Aperture{0.0, design.primary_radius}},
        Mirror{Conic(secondary, pose), MirrorRole::secondary, Branch::negative,
               Aperture{0.0, design.secondary_radius}},
    }};
    if (!is_confocal(scene)) throw Error(ErrorKind::internal, "cassegrain foci do not coincide");
    return scene;
}

namespace {

const Mirror& mirror_with_role(const Scene& scene, MirrorRole role, ConicKind kind) {
    for (const Mirror& m : scene.mirrors) {
        if (m.role == role) {
            if (m.conic.kind() != kind) {
                throw Error(ErrorKind::invalid_argument,
                            std::string(to_string(role)) + " mirror has the wrong conic kind");
            }
            return m;
        }
    }
    throw Error(ErrorKind::invalid_argument, "scene has no " + std::string(to_string(role)) + " mirror");
}

/// Secondary foci ordered as (near its branch, away from its branch).
std::pair<Point, Point> secondary_foci(const Mirror& secondary) {
    if (!secondary.branch) {
        throw Error(ErrorKind::invalid_argument, "secondary mirror must select a hyperbola branch");
    }
    const auto [f1, f2] = foci(secondary.conic);
    return *secondary.branch == Branch::negative ? std::pair{f1, f2} : std::pair{f2, f1};
}

}  // namespace

const Mirror& primary_mirror(const Scene& scene) {
    return mirror_with_role(scene, MirrorRole::primary, ConicKind::parabola);
}

const Mirror& secondary_mirror(const Scene& scene) {
    return mirror_with_role(scene, MirrorRole::secondary, ConicKind::hyperbola);
}

bool is_confocal(const Scene& scene, double tol) {
    const Point focus = parabola_focus(primary_mirror(scene).conic);
    return distance(focus, secondary_foci(secondary_mirror(scene)).first) <= tol;
}

Point cassegrain_focus(const Scene& scene) {
    return secondary_foci(secondary_mirror(scene)).second;
}

std::vector<Ray> cassegrain_rays(const Scene& scene, int n_rays, double aperture) {
    if (n_rays < 1) throw Error(ErrorKind::invalid_argument, "n_rays must be >= 1");
    const Mirror& primary = primary_mirror(scene);
    const Mirror& secondary = secondary_mirror(scene);
    const double shadow = secondary.aperture.outer;
    if (!std::isfinite(shadow)) {
        throw Error(ErrorKind::invalid_argument, "secondary mirror needs a finite aperture");
    }
    if (!(aperture > shadow)) {
        throw Error(ErrorKind::invalid_argument, "aperture must exceed the secondary's radius");
    }

    const Placement& pose = primary.conic.placement();
    const double p = std::get<Parabola>(primary.conic.shape()).p;
    const double rim = aperture * aperture / (4.0 * p);
    const auto& hyp = std::get<Hyperbola>(secondary.conic.shape());
    const double sigma = *secondary.branch == Branch::positive ? 1.0 : -1.0;
    const Point vertex = secondary.conic.placement().to_world(Point{sigma * hyp.a, 0.0});
    const double vertex_height = pose.to_canonical(vertex).y();
    if (!(vertex_height > rim)) {
        throw Error(ErrorKind::invalid_argument, "secondary must sit above the primary's rim");
    }
    const double launch = 0.5 * (rim + vertex_height);
    const Direction down = -parabola_axis(primary.conic);

    std::vector<Ray> rays;
    rays.reserve(static_cast<std::size_t>(n_rays));
    if (n_rays == 1) {
        rays.push_back({pose.to_world(Point{0.0, launch}), down});
        return rays;
    }
    const double side = aperture - shadow;
    for (int i = 0; i < n_rays; ++i) {
        const double u = (i + 0.5) / n_rays * 2.0 * side;
        const double s = u < side ? -(aperture - u) : shadow + (u - side);
        rays.push_back({pose.to_world(Point{s, launch}), down});
    }
    return rays;
}

SpotStats spot_statistics(const Scene& scene, std::span<const Ray> rays, Point target,
                          const Tolerances& tol) {
    SpotStats stats;
    double max_d = 0.0;
    double sum_sq = 0.0;
    for (const Ray& ray : rays) {
        const TracePath path = trace(scene, ray, 2, tol);
        const bool expected = path.hits.size() == 2 &&
                              scene.mirrors[path.hits[0].mirror].role == MirrorRole::primary &&
                              scene.mirrors[path.hits[1].mirror].role == MirrorRole::secondary;
        if (!expected) {
            ++stats.missed;
            continue;
        }
        const double d = distance_to_line(target, Line{path.final_ray.origin, path.final_ray.dir});
        max_d = std::max(max_d, d);
        sum_sq += d * d;
        ++stats.traced;
    }
    if (stats.traced > 0) {
        stats.max_distance = max_d;
        stats.rms_distance = std::sqrt(sum_sq / stats.traced);
    }
    return stats;
}

SpotStats cassegrain_spot(const Scene& scene, int n_rays, double aperture, const Tolerances& tol) {
    const std::vector<Ray> rays = cassegrain_rays(scene, n_rays, aperture);
    return spot_statistics(scene, rays, cassegrain_focus(scene), tol);
}

}  // namespace isoconic
