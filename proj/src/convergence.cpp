#include "isoconic/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "isoconic/error.hpp"

namespace isoconic {

namespace {

constexpr Metric kMetricOrder[] = {
    Metric::residual_b,        Metric::chord_tangent_angle, Metric::apex_curve_distance,
    Metric::parallelism_error, Metric::exact_return_gap,
};

bool is_angle(Metric m) {
    return m == Metric::chord_tangent_angle || m == Metric::parallelism_error;
}

double metric_scale(Metric m, const SweepConfig& cfg) {
    return is_angle(m) ? 1.0 : std::max(cfg.conic.scale(), cfg.anchor.vec().norm());
}

double chord_tangent_angle(const Conic& conic, const StepTriangle& tri, const Tolerances& tol) {
    if (tri.degenerate) return 0.0;
    // B - A == delta * (leg1 + leg2); summing the unit legs keeps full precision at tiny delta.
    const Direction chord(tri.leg1_dir.vec() + tri.leg2_dir.vec());
    const double angle = angle_between(chord, tangent_normal(conic, tri.a, tol).tangent);
    return std::min(angle, std::numbers::pi - angle);
}

double measure(Metric metric, const SweepConfig& cfg, const StepTriangle& tri, double delta,
               const Tolerances& tol) {
    switch (metric) {
        case Metric::residual_b: return std::abs(tri.residual_b);
        case Metric::chord_tangent_angle: return chord_tangent_angle(cfg.conic, tri, tol);
        case Metric::apex_curve_distance: return distance(tri.d, project_to_curve(cfg.conic, tri.d, tol));
        case Metric::parallelism_error: return focal_change_error(tri, cfg.conic).parallelism_error;
        case Metric::exact_return_gap:
            return std::abs(exact_return(cfg.conic, cfg.anchor, delta, cfg.orientation, tol).t_star - delta);
    }
    throw Error(ErrorKind::internal, "unknown metric");
}

}  // namespace

std::string_view to_string(Metric metric) noexcept {
    switch (metric) {
        case Metric::residual_b: return "residual_B";
        case Metric::chord_tangent_angle: return "chord_tangent_angle";
        case Metric::apex_curve_distance: return "apex_curve_distance";
        case Metric::parallelism_error: return "parallelism_error";
        case Metric::exact_return_gap: return "exact_return_gap";
    }
    return "unknown";
}

std::optional<Metric> metric_from_string(std::string_view name) noexcept {
    for (Metric m : kMetricOrder) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

std::vector<Metric> all_metrics() { return {std::begin(kMetricOrder), std::end(kMetricOrder)}; }

std::vector<Metric> default_metrics(const Conic& conic) {
    std::vector<Metric> out = all_metrics();
    if (conic.kind() == ConicKind::parabola) std::erase(out, Metric::parallelism_error);
    return out;
}

std::vector<double> ConvergenceReport::column(Metric metric) const {
    const auto it = std::find(metrics.begin(), metrics.end(), metric);
    if (it == metrics.end()) {
        throw Error(ErrorKind::invalid_argument,
                    "metric " + std::string(to_string(metric)) + " was not measured");
    }
    const auto idx = static_cast<std::size_t>(it - metrics.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const SweepRow& row : rows) out.push_back(row.values[idx]);
    return out;
}

const MetricFit& ConvergenceReport::fit(Metric metric) const {
    for (const MetricFit& f : fits) {
        if (f.metric == metric) return f;
    }
    throw Error(ErrorKind::invalid_argument,
                "metric " + std::string(to_string(metric)) + " was not measured");
}

OrderEstimate estimate_order(std::span<const double> values, double scale, const Tolerances& tol) {
    const double floor = tol.noise_floor_eps * std::numeric_limits<double>::epsilon() * scale;
    double sum = 0.0;
    int used = 0;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        if (values[k] > floor && values[k + 1] > floor) {
            sum += std::log2(values[k] / values[k + 1]);
            ++used;
        }
    }
    if (used == 0) return {std::nullopt, 0};
    return {sum / used, used};
}

double metric_noise_floor(Metric metric, const SweepConfig& cfg, const Tolerances& tol) {
    return tol.noise_floor_eps * std::numeric_limits<double>::epsilon() * metric_scale(metric, cfg);
}

bool is_nonincreasing_above(std::span<const double> values, double floor) {
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        if (values[k] > floor && values[k + 1] > floor && values[k + 1] > values[k]) return false;
    }
    return true;
}

ConvergenceReport run_sweep(const SweepConfig& cfg, const Tolerances& tol) {
    if (!std::isfinite(cfg.delta0) || !(cfg.delta0 > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "delta0 must be positive");
    }
    if (cfg.halvings < 2) throw Error(ErrorKind::invalid_argument, "need >= 2 levels (halvings >= 2)");
    if (cfg.metrics.empty()) throw Error(ErrorKind::invalid_argument, "no metrics requested");
    if (cfg.conic.kind() == ConicKind::parabola &&
        std::find(cfg.metrics.begin(), cfg.metrics.end(), Metric::parallelism_error) != cfg.metrics.end()) {
        throw Error(ErrorKind::unsupported_variant, "parallelism_error needs a two-focus conic");
    }
    if (!(std::abs(residual(cfg.conic, cfg.anchor)) <= tol.on_curve)) {
        throw Error(ErrorKind::off_curve, "sweep anchor is off the curve");
    }

    ConvergenceReport report;
    report.metrics = cfg.metrics;
    for (int k = 0; k <= cfg.halvings; ++k) {
        const double delta = std::ldexp(cfg.delta0, -k);
        try {
            const StepTriangle tri = two_step(cfg.conic, cfg.anchor, delta, cfg.orientation, tol);
            SweepRow row{delta, {}};
            row.values.reserve(cfg.metrics.size());
            for (Metric m : cfg.metrics) row.values.push_back(measure(m, cfg, tri, delta, tol));
            report.rows.push_back(std::move(row));
        } catch (const Error& e) {
            report.truncated = "level " + std::to_string(k) + " (delta " + std::to_string(delta) +
                               "): " + e.what();
            break;
        }
    }

    for (Metric m : cfg.metrics) {
        const std::vector<double> values = report.column(m);
        const double floor = metric_noise_floor(m, cfg, tol);
        MetricFit fit{m, estimate_order(values, metric_scale(m, cfg), tol), std::nullopt, floor};
        if (fit.estimate.order) {
            for (std::size_t k = values.size(); k-- > 0;) {
                if (values[k] > floor) {
                    fit.constant = values[k] / std::pow(report.rows[k].delta, *fit.estimate.order);
                    break;
                }
            }
        }
        report.fits.push_back(fit);
    }
    return report;
}

}  // namespace isoconic
