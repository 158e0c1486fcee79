#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hvh {

/// A twice differentiable map f: R^d -> R^m applied pointwise to a decision set.
/// Supplies the values, the m×d Jacobian, and the m symmetric d×d Hessians of one point.
class ObjectiveModel {
public:
    virtual ~ObjectiveModel() = default;

    virtual std::size_t num_objectives() const = 0;
    virtual std::size_t num_variables() const = 0;

    virtual Eigen::VectorXd evaluate(std::span<const double> x) const = 0;
    virtual Eigen::MatrixXd jacobian(std::span<const double> x) const = 0;
    virtual std::vector<Eigen::MatrixXd> hessians(std::span<const double> x) const = 0;
};

} // namespace hvh
