#include "isoconic/geometry.hpp"

#include <cmath>
#include <string>

#include "isoconic/error.hpp"
#include "isoconic/tolerances.hpp"

namespace isoconic {

Point::Point(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw Error(ErrorKind::invalid_argument, "point coordinates must be finite");
    }
}

double distance(Point a, Point b) noexcept { return (a - b).norm(); }

Direction::Direction(Vec2 v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n < default_tolerances.min_direction_norm) {
        throw Error(ErrorKind::degenerate_direction,
                    "cannot normalize vector of norm " + std::to_string(n));
    }
    v_ = {v.x / n, v.y / n};
}

Direction reflect_direction(Direction incoming, const Line& mirror) {
    const Vec2 m = mirror.dir.vec();
    const Vec2 d = incoming.vec();
    return Direction(2.0 * dot(d, m) * m - d);
}

double angle_between(Direction u, Direction v) noexcept {
    return std::atan2(std::abs(cross(u.vec(), v.vec())), dot(u.vec(), v.vec()));
}

double distance_to_line(Point q, const Line& line) noexcept {
    return std::abs(cross(line.dir.vec(), q - line.point));
}

}  // namespace isoconic
