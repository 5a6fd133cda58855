#pragma once

// Ellipses, parabolas and hyperbolas defined by their focal/directrix loci.
//
// Every conic is stored in canonical pose and carries a rigid Placement that
// maps canonical coordinates to the world frame:
//   ellipse    x^2/a^2 + y^2/b^2 = 1, foci (-c, 0), (+c, 0), c = sqrt(a^2 - b^2)
//   parabola   x^2 = 4 p y, focus (0, p), directrix y = -p
//   hyperbola  x^2/a^2 - y^2/b^2 = 1, foci (-c, 0), (+c, 0), c = sqrt(a^2 + b^2)
// All formulas run in the canonical frame; inputs and outputs are world points.

#include <variant>

#include "isoconic/geometry.hpp"
#include "isoconic/tolerances.hpp"

namespace isoconic {

struct Ellipse {
    double a;
    double b;

    /// Throws unless a >= b > 0. a == b (a circle) is allowed.
    Ellipse(double semi_major, double semi_minor);
    double focal_half_distance() const noexcept;
};

struct Parabola {
    double p;

    /// Throws unless p > 0.
    explicit Parabola(double focal_length);
};

struct Hyperbola {
    double a;
    double b;

    /// Throws unless a > 0 and b > 0.
    Hyperbola(double semi_transverse, double semi_conjugate);
    double focal_half_distance() const noexcept;
};

/// Hyperbola branch by sign of the canonical x coordinate.
enum class Branch { positive, negative };

/// Orientation-preserving rigid motion: world = R(rotation) * canonical + translation.
class Placement {
public:
    Placement() noexcept = default;
    Placement(Point translation, double rotation);

    Point translation() const noexcept { return translation_; }
    double rotation() const noexcept { return rotation_; }

    Point to_world(Point canonical) const;
    Point to_canonical(Point world) const;
    Vec2 vector_to_world(Vec2 v) const noexcept;
    Vec2 vector_to_canonical(Vec2 v) const noexcept;
    Direction to_world(Direction d) const { return Direction(vector_to_world(d.vec())); }
    Direction to_canonical(Direction d) const { return Direction(vector_to_canonical(d.vec())); }

    Placement inverse() const;
    /// (this * inner)(p) == this->to_world(inner.to_world(p)).
    Placement compose(const Placement& inner) const;

private:
    Point translation_{};
    double rotation_ = 0.0;
    double cos_ = 1.0;
    double sin_ = 0.0;
};

enum class ConicKind { ellipse, parabola, hyperbola };

class Conic {
public:
    using Shape = std::variant<Ellipse, Parabola, Hyperbola>;

    Conic(Shape shape, Placement placement = {}) : shape_(shape), placement_(placement) {}

    static Conic ellipse(double a, double b, Placement placement = {}) {
        return {Ellipse(a, b), placement};
    }
    static Conic parabola(double p, Placement placement = {}) {
        return {Parabola(p), placement};
    }
    static Conic hyperbola(double a, double b, Placement placement = {}) {
        return {Hyperbola(a, b), placement};
    }

    const Shape& shape() const noexcept { return shape_; }
    const Placement& placement() const noexcept { return placement_; }
    ConicKind kind() const noexcept { return static_cast<ConicKind>(shape_.index()); }

    /// Characteristic length: a + b for ellipse and hyperbola, p for the parabola.
    double scale() const noexcept;

private:
    Shape shape_;
    Placement placement_;
};

/// The two foci in world coordinates, F1 from canonical (-c, 0), F2 from (+c, 0).
/// Throws unsupported_variant for parabolas.
struct FocalPair {
    Point f1;
    Point f2;
};
FocalPair foci(const Conic& conic);

Point parabola_focus(const Conic& conic);
Line parabola_directrix(const Conic& conic);
/// Unit vector along the parabola's axis, pointing from vertex to focus.
Direction parabola_axis(const Conic& conic);

/// Branch of a hyperbola a world point belongs to. Throws no_branch when the
/// canonical x coordinate is exactly zero.
Branch branch_of(const Conic& conic, Point q);

/// Signed locus violation; zero exactly on the curve, positive outside.
///   ellipse    |q-F1| + |q-F2| - 2a
///   parabola   |q-focus| - (signed distance to the directrix, focus side positive)
///   hyperbola  |q-F_far| - |q-F_near| - 2a on the branch of q
double residual(const Conic& conic, Point q);

/// Implicit quadratic (canonical form above, evaluated at a world point) and
/// its world-frame gradient.
double implicit_value(const Conic& conic, Point q);
Vec2 implicit_gradient(const Conic& conic, Point q);

struct TangentNormal {
    Direction tangent;
    Direction normal;
};

/// Outward unit normal from the implicit gradient, and the tangent as that
/// normal rotated by -pi/2. Throws off_curve if |residual| exceeds tol.on_curve.
TangentNormal tangent_normal(const Conic& conic, Point q,
                             const Tolerances& tol = default_tolerances);

/// Parametric point: ellipse (a cos t, b sin t); parabola (t, t^2 / 4p);
/// hyperbola (s a cosh t, b sinh t) with s the branch sign.
Point point_at(const Conic& conic, double t, Branch branch = Branch::positive);

/// Nearest point on the curve to q: coarse parameter grid, then a bracketed
/// Newton iteration on the foot-of-normal condition. Throws non_convergence
/// if the iteration cap is hit.
Point project_to_curve(const Conic& conic, Point q, const Tolerances& tol = default_tolerances);

}  // namespace isoconic
