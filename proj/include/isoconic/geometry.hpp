#pragma once

// 2D vector algebra and the mirror reflection law.
//
// Point is a position, Vec2 a displacement, Direction a unit vector. The
// split keeps "A - F1" (a Vec2) from being passed where a unit direction is
// expected without an explicit normalization step.

#include <cmath>

namespace isoconic {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const noexcept { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const noexcept { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const noexcept { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const noexcept { return {x * s, y * s}; }
    constexpr bool operator==(const Vec2&) const = default;

    double norm() const noexcept { return std::hypot(x, y); }
};

constexpr Vec2 operator*(double s, Vec2 v) noexcept { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product.
constexpr double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }

/// A finite 2D position. Construction from NaN/Inf throws.
class Point {
public:
    constexpr Point() noexcept = default;
    Point(double x, double y);

    constexpr double x() const noexcept { return x_; }
    constexpr double y() const noexcept { return y_; }
    constexpr Vec2 vec() const noexcept { return {x_, y_}; }

    Point operator+(Vec2 v) const { return {x_ + v.x, y_ + v.y}; }
    Point operator-(Vec2 v) const { return {x_ - v.x, y_ - v.y}; }
    constexpr Vec2 operator-(Point o) const noexcept { return {x_ - o.x_, y_ - o.y_}; }
    constexpr bool operator==(const Point&) const = default;

private:
    double x_ = 0.0;
    double y_ = 0.0;
};

double distance(Point a, Point b) noexcept;

/// Unit-norm direction. Built only by normalizing a vector; vectors with
/// norm below the degenerate threshold (or non-finite) are rejected.
class Direction {
public:
    explicit Direction(Vec2 v);
    Direction(double dx, double dy) : Direction(Vec2{dx, dy}) {}

    /// Direction of travel from `from` to `to`.
    static Direction between(Point from, Point to) { return Direction(to - from); }

    constexpr double dx() const noexcept { return v_.x; }
    constexpr double dy() const noexcept { return v_.y; }
    constexpr Vec2 vec() const noexcept { return v_; }

    Direction operator-() const noexcept { return Direction(-v_, unchecked_tag{}); }
    constexpr Vec2 operator*(double s) const noexcept { return v_ * s; }
    constexpr bool operator==(const Direction&) const = default;

    /// This direction rotated by -pi/2 (clockwise).
    Direction rotated_cw() const noexcept { return Direction({v_.y, -v_.x}, unchecked_tag{}); }
    /// This direction rotated by +pi/2 (counter-clockwise).
    Direction rotated_ccw() const noexcept { return Direction({-v_.y, v_.x}, unchecked_tag{}); }

private:
    struct unchecked_tag {};
    Direction(Vec2 v, unchecked_tag) noexcept : v_(v) {}

    Vec2 v_;
};

struct Line {
    Point point;
    Direction dir;
};

/// Reflects `incoming` off a mirror line: the component along the mirror is
/// kept, the perpendicular component negated (r = 2(d.m)m - d).
Direction reflect_direction(Direction incoming, const Line& mirror);

/// Unsigned angle in [0, pi], via atan2(|cross|, dot).
double angle_between(Direction u, Direction v) noexcept;

/// Signed length of `step` projected onto `onto`.
inline double scalar_projection(Vec2 step, Direction onto) noexcept {
    return dot(step, onto.vec());
}

/// Perpendicular distance from `q` to the infinite line.
double distance_to_line(Point q, const Line& line) noexcept;

}  // namespace isoconic
