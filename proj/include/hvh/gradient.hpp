#pragma once

#include <cstddef>
#include <vector>

#include "hvh/core.hpp"
#include "hvh/objective_model.hpp"

namespace hvh {

/// Gradient laid out in concat order: entry i·m + k is the derivative w.r.t.
/// coordinate k of point i (m = objective or decision dimension).
struct GradientVector {
    std::vector<double> values;
    /// Indices of dominated points; their entries are 0.
    std::vector<std::size_t> dominated_points;

    bool has_dominated() const noexcept { return !dominated_points.empty(); }
};

/// ∂HV/∂Y. Entry (i, k) is −hvc of the projection of point i along k against the
/// projections of the points with a smaller k-coordinate. Every entry is ≤ 0.
/// Throws GeneralPositionError on coordinate ties.
GradientVector hv_gradient(const PointSet& set);

/// ∂HV(F(X))/∂X: per point, the objective gradient block times the m×d Jacobian.
GradientVector hv_gradient_decision(const std::vector<Point>& decisions, const ObjectiveModel& model,
                                    const Point& reference);

/// F(X) as a validated point set.
PointSet evaluate_points(const std::vector<Point>& decisions, const ObjectiveModel& model,
                         const Point& reference);

} // namespace hvh
