#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hvh/core.hpp"
#include "hvh/sparse.hpp"

namespace hvh::oracle {

/// Central finite differences with an agreement tolerance of max(abs_tol, rel_tol·|ref|).
///
/// The default steps are the powers of two nearest 1e-5 and 1e-4. A power-of-two step
/// keeps y ± h exact for coordinates on a coarse binary grid, and hv is piecewise
/// multilinear, so on such data the differences carry no error at all.
struct FdConfig {
    double step = 0x1p-17;
    double rel_tol = 1e-6;
    double abs_tol = 1e-8;

    /// Throws std::invalid_argument unless step and both tolerances are positive.
    void validate() const;

    static FdConfig gradient_defaults() { return {}; }
    static FdConfig hessian_defaults() { return {0x1p-13, 1e-4, 1e-6}; }
};

using ScalarFunction = std::function<double(std::span<const double>)>;

/// Σ over non-empty subsets S of (−1)^{|S|+1}·Π_k (r_k − max_{y∈S} y_k)⁺. At most 20 points.
double hv_inclusion_exclusion(const PointSet& set);

/// (f(x + h·e) − f(x − h·e)) / 2h per coordinate. Exceptions thrown by f (e.g. a
/// perturbed point leaving the reference box) propagate.
std::vector<double> fd_gradient(const ScalarFunction& f, std::span<const double> at, const FdConfig& cfg);

/// Four-point mixed differences off the diagonal, three-point formula on it.
Eigen::MatrixXd fd_hessian(const ScalarFunction& f, std::span<const double> at, const FdConfig& cfg);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Uniform sampling in the box [componentwise min of the points, reference]. Samples are
/// drawn in fixed-size chunks, each from its own generator seeded by (seed, chunk), so
/// the estimate depends only on (set, samples, seed).
MonteCarloEstimate hv_monte_carlo(const PointSet& set, std::size_t samples, std::uint64_t seed);

/// Worst disagreement between an analytic result and its reference.
struct Deviation {
    double max_abs = 0.0;
    /// max |a − b| / max(|b|, tiny)
    double max_rel = 0.0;
    /// Entries violating max(abs_tol, rel_tol·|b|).
    std::size_t violations = 0;

    bool ok() const noexcept { return violations == 0; }
};

Deviation compare(std::span<const double> analytic, std::span<const double> reference, double abs_tol,
                  double rel_tol);
Deviation compare(const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& reference, double abs_tol,
                  double rel_tol);

/// Analytic derivatives of a point set next to their finite-difference references.
struct DerivativeReport {
    std::vector<double> gradient;
    SparseSymMatrix hessian;
    std::vector<double> fd_gradient;
    Eigen::MatrixXd fd_hessian;
    Deviation gradient_deviation;
    Deviation hessian_deviation;
    /// Entries with |v| > 1e-6 in exactly one of analytic / finite-difference Hessian.
    std::size_t support_mismatches = 0;
    std::size_t hessian_nonzeros = 0;
    std::size_t fd_hessian_nonzeros = 0;

    bool ok() const noexcept { return gradient_deviation.ok() && hessian_deviation.ok() && support_mismatches == 0; }
};

/// Compares given analytic derivatives of f at x with finite differences of f.
DerivativeReport verify_derivatives(const ScalarFunction& f, std::span<const double> x, std::vector<double> gradient,
                                    SparseSymMatrix hessian, const FdConfig& gradient_cfg, const FdConfig& hessian_cfg);

/// Runs hv_gradient and hessian_objective against fd_gradient / fd_hessian of hv.
DerivativeReport verify_derivatives(const PointSet& set, const FdConfig& gradient_cfg = FdConfig::gradient_defaults(),
                                    const FdConfig& hessian_cfg = FdConfig::hessian_defaults());

/// Smallest gap between distinct coordinate values on any axis, and between any
/// coordinate and the reference. A finite-difference step must stay well below it.
double general_position_margin(const PointSet& set);

} // namespace hvh::oracle
