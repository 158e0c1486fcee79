#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hvh/core.hpp"
#include "hvh/objective_model.hpp"
#include "hvh/sparse.hpp"

namespace hvh {

/// Derivative of hvc(y, others) with respect to the coordinates of y.
struct HvcDerivative {
    std::vector<double> values;
};

/// Component p is −hvc(proj_p y, {proj_p z : z ∈ others, z_p < y_p}) in one dimension
/// less; in one dimension it is −1 or 0. Zero when some member of `others` weakly
/// dominates y. Throws DimensionError for 0-dimensional input.
HvcDerivative hvc_derivative(std::span<const double> y, std::span<const Point> others,
                             std::span<const double> reference);

/// Column-by-column emissions of A = ∂²HV/∂Y∂Yᵀ before symmetrization: the entries
/// computed for column (i, k) are emitted as {row, col = i·m + k, value}. Both
/// triangles are present, once each. Throws GeneralPositionError on ties.
std::vector<MatrixEntry> hessian_objective_columns(const PointSet& set);

/// A = ∂²HV/∂Y∂Yᵀ for any m by recursive projection and clipping. Same-point entries
/// are ≥ 0, cross-point entries ≤ 0, and entries pairing equal axes are exactly 0.
/// Throws hvh::Error if the two triangles disagree beyond 1e-9.
SparseSymMatrix hessian_objective(const PointSet& set);

/// The pieces of the decision-space Hessian ∇Fᵀ·A·∇F + Σ (∂HV/∂f_β(x_α))·T^{αβ}.
struct DecisionHessian {
    SparseSymMatrix objective_hessian;
    Eigen::MatrixXd chained;     ///< ∇Fᵀ·A·∇F, nd × nd
    Eigen::MatrixXd tensor_term; ///< block diagonal, n blocks of d × d
    SparseSymMatrix hessian;     ///< symmetrized sum
};

DecisionHessian hessian_decision_parts(const std::vector<Point>& decisions, const ObjectiveModel& model,
                                       const Point& reference);

SparseSymMatrix hessian_decision(const std::vector<Point>& decisions, const ObjectiveModel& model,
                                 const Point& reference);

} // namespace hvh
