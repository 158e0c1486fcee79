#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hvh/core.hpp"
#include "hvh/objective_model.hpp"

namespace hvh::problems {

/// f_j(x) = ‖x − c_j‖². Jacobian rows 2(x − c_j)ᵀ, every Hessian 2·I.
class QuadraticMop final : public ObjectiveModel {
public:
    /// Throws std::invalid_argument if there are fewer than two centers, the centers
    /// differ in dimension, or two centers coincide.
    explicit QuadraticMop(std::vector<Point> centers);

    std::size_t num_objectives() const override { return centers_.size(); }
    std::size_t num_variables() const override { return dim_; }
    const std::vector<Point>& centers() const noexcept { return centers_; }

    Eigen::VectorXd evaluate(std::span<const double> x) const override;
    Eigen::MatrixXd jacobian(std::span<const double> x) const override;
    std::vector<Eigen::MatrixXd> hessians(std::span<const double> x) const override;

private:
    std::vector<Point> centers_;
    std::size_t dim_ = 0;
};

/// Throws std::invalid_argument when centers.size() != m or a center is not d-dimensional.
QuadraticMop make_quadratic_mop(std::size_t d, std::size_t m, std::vector<Point> centers);

/// f(x) = B·x.
class LinearModel final : public ObjectiveModel {
public:
    explicit LinearModel(Eigen::MatrixXd b) : b_(std::move(b)) {}

    std::size_t num_objectives() const override { return static_cast<std::size_t>(b_.rows()); }
    std::size_t num_variables() const override { return static_cast<std::size_t>(b_.cols()); }

    Eigen::VectorXd evaluate(std::span<const double> x) const override;
    Eigen::MatrixXd jacobian(std::span<const double> x) const override;
    std::vector<Eigen::MatrixXd> hessians(std::span<const double> x) const override;

private:
    Eigen::MatrixXd b_;
};

/// n mutually non-dominated points in general position on the positive unit sphere
/// (coordinates in (0, 1)), reference (1.1, ..., 1.1). Deterministic in seed.
PointSet random_front(std::size_t n, std::size_t m, std::uint64_t seed);

/// n decision vectors spread between the first two centers of a quadratic MOP with a
/// small transverse perturbation, so F(X) strictly dominates `reference`.
std::vector<Point> random_start(const QuadraticMop& model, std::size_t n, std::uint64_t seed);

enum class StepKind {
    newton,            ///< damped Newton step accepted
    gradient_fallback, ///< Hessian (near-)singular; damped gradient ascent step instead
    stalled,           ///< no trial step kept the hypervolume from decreasing; X unchanged
};

std::string to_string(StepKind kind);

struct NewtonOptions {
    std::size_t max_halvings = 20;
    /// Reciprocal condition estimate below which the Hessian counts as singular.
    double min_rcond = 1e-12;
};

struct NewtonResult {
    std::vector<Point> next;
    double hv_before = 0.0;
    double hv_after = 0.0;
    double step_length = 0.0;
    std::size_t halvings = 0;
    StepKind kind = StepKind::newton;
    /// The Hessian failed the condition check; the direction was the gradient.
    bool singular = false;
    /// Reciprocal condition estimate of the decision-space Hessian.
    double rcond = 0.0;
};

/// HV(F(X)); the caller guarantees F(X) strictly dominates the reference.
double decision_hv(const std::vector<Point>& decisions, const ObjectiveModel& model, const Point& reference);

/// One damped hypervolume Newton step X − t·H⁻¹∇HV_F(X) with t halved from 1 until the
/// hypervolume does not decrease. Trial points that leave the reference box or general
/// position are rejected like decreasing ones.
NewtonResult newton_step(const std::vector<Point>& decisions, const ObjectiveModel& model, const Point& reference,
                         const NewtonOptions& options = {});

} // namespace hvh::problems
