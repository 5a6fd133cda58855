#pragma once

// delta -> 0 sweeps of the two-step construction.
//
// Each sweep halves delta repeatedly and records how far the construction is
// from the limiting behavior (endpoint on the curve, base along the tangent,
// apex on the curve). Orders are estimated as the mean log2 ratio of
// successive values; they are empirical measurements, not derived rates.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isoconic/conic.hpp"
#include "isoconic/construction.hpp"
#include "isoconic/tolerances.hpp"

namespace isoconic {

enum class Metric {
    residual_b,
    chord_tangent_angle,
    apex_curve_distance,
    parallelism_error,
    exact_return_gap,
};

std::string_view to_string(Metric metric) noexcept;
std::optional<Metric> metric_from_string(std::string_view name) noexcept;

/// All five metrics in canonical column order.
std::vector<Metric> all_metrics();
/// All metrics that apply to the conic (parallelism needs two foci).
std::vector<Metric> default_metrics(const Conic& conic);

struct SweepConfig {
    Conic conic;
    Point anchor;
    double delta0 = 0.1;
    int halvings = 6;
    std::vector<Metric> metrics;
    Orientation orientation = Orientation::forward;
};

struct SweepRow {
    double delta = 0.0;
    /// One value per requested metric, in SweepConfig::metrics order.
    std::vector<double> values;
};

struct OrderEstimate {
    /// Empty when fewer than two values sit above the noise floor.
    std::optional<double> order;
    int n_used = 0;
};

struct MetricFit {
    Metric metric;
    OrderEstimate estimate;
    /// C in value ~ C * delta^order, from the smallest retained delta.
    std::optional<double> constant;
    double noise_floor = 0.0;
};

struct ConvergenceReport {
    std::vector<Metric> metrics;
    std::vector<SweepRow> rows;
    std::vector<MetricFit> fits;
    /// Set when the construction failed at some level; rows stop before it.
    std::optional<std::string> truncated;

    /// Column of one metric across all rows. Throws if the metric was not requested.
    std::vector<double> column(Metric metric) const;
    const MetricFit& fit(Metric metric) const;
};

/// Mean of log2(v[k] / v[k+1]) over consecutive pairs whose values both
/// exceed noise_floor_eps * machine epsilon * scale.
OrderEstimate estimate_order(std::span<const double> values, double scale,
                             const Tolerances& tol = default_tolerances);

/// Noise floor for a metric at this configuration: lengths scale with the
/// conic and anchor size, angles are dimensionless.
double metric_noise_floor(Metric metric, const SweepConfig& cfg,
                          const Tolerances& tol = default_tolerances);

/// Throws invalid_argument for delta0 <= 0, halvings < 2, an empty or
/// inapplicable metric list, or an off-curve anchor.
ConvergenceReport run_sweep(const SweepConfig& cfg, const Tolerances& tol = default_tolerances);

/// True if the values never increase, ignoring pairs that involve a value at
/// or below `floor`.
bool is_nonincreasing_above(std::span<const double> values, double floor);

}  // namespace isoconic
