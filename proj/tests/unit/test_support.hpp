#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoconic/conic.hpp"
#include "isoconic/scene_file.hpp"

namespace isoconic::support {

struct Anchor {
    Conic conic;
    double param;
    Branch branch;
    Point point;
    std::string label;
};

inline std::vector<Anchor> fixture_anchors() {
    std::ifstream in(std::string(FIXTURE_DIR) + "/anchors.json");
    const nlohmann::json doc = nlohmann::json::parse(in);
    std::vector<Anchor> out;
    for (const auto& fam : doc.at("families")) {
        nlohmann::json shape{{"kind", fam.at("kind")}, {"parameters", fam.at("parameters")}};
        const Conic conic = conic_from_json(shape);
        for (const auto& group : fam.at("groups")) {
            const Branch branch = group.at("branch") == "negative" ? Branch::negative : Branch::positive;
            for (double t : group.at("params")) {
                out.push_back({conic, t, branch, point_at(conic, t, branch),
                               fam.at("kind").get<std::string>() + " t=" + std::to_string(t)});
            }
        }
    }
    return out;
}

/// Random conics with non-circular ellipses and random placements.
class ConicGen {
public:
    explicit ConicGen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Placement placement() {
        return {Point(uniform(-5.0, 5.0), uniform(-5.0, 5.0)), uniform(-std::numbers::pi, std::numbers::pi)};
    }

    Conic ellipse() {
        const double a = uniform(0.5, 10.0);
        return Conic::ellipse(a, a * uniform(0.3, 0.9), placement());
    }
    Conic parabola() { return Conic::parabola(uniform(0.2, 5.0), placement()); }
    Conic hyperbola() { return Conic::hyperbola(uniform(0.5, 5.0), uniform(0.5, 5.0), placement()); }

    Conic any(ConicKind kind) {
        switch (kind) {
            case ConicKind::ellipse: return ellipse();
            case ConicKind::parabola: return parabola();
            case ConicKind::hyperbola: return hyperbola();
        }
        return ellipse();
    }

    /// Parameter range that keeps points within a few scale units of the vertex.
    double param(ConicKind kind, double scale) {
        switch (kind) {
            case ConicKind::ellipse: return uniform(0.0, 2.0 * std::numbers::pi);
            case ConicKind::parabola: return uniform(-3.0, 3.0) * scale;
            case ConicKind::hyperbola: return uniform(-1.5, 1.5);
        }
        return 0.0;
    }

    Branch branch() { return uniform(0.0, 1.0) < 0.5 ? Branch::negative : Branch::positive; }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline const ConicKind kAllKinds[] = {ConicKind::ellipse, ConicKind::parabola, ConicKind::hyperbola};

/// Smallest geometric length of the curve: vertex radius of curvature or a
/// semi-axis, whichever is shorter. Step lengths are drawn relative to it.
inline double feature_size(const Conic& c) {
    if (const auto* e = std::get_if<Ellipse>(&c.shape())) return e->b * e->b / e->a;
    if (const auto* p = std::get_if<Parabola>(&c.shape())) return p->p;
    const auto& h = std::get<Hyperbola>(c.shape());
    return std::min({h.b * h.b / h.a, h.a, h.b});
}

inline double conic_scale(const Conic& c) {
    return c.scale() + std::hypot(c.placement().translation().x(), c.placement().translation().y());
}

}  // namespace isoconic::support
