#include "hvh/gradient.hpp"

#include <algorithm>
#include <string>

#include "hvh/hypervolume.hpp"

namespace hvh {

namespace {

void require_model_shape(const std::vector<Point>& decisions, const ObjectiveModel& model,
                         const Point& reference) {
    if (reference.size() != model.num_objectives()) {
        throw DimensionError("reference has dimension " + std::to_string(reference.size()) + ", model has " +
                             std::to_string(model.num_objectives()) + " objectives");
    }
    for (const auto& x : decisions) {
        if (x.size() != model.num_variables()) {
            throw DimensionError("decision vector of dimension " + std::to_string(x.size()) + ", model expects " +
                                 std::to_string(model.num_variables()));
        }
    }
}

} // namespace

PointSet evaluate_points(const std::vector<Point>& decisions, const ObjectiveModel& model,
                         const Point& reference) {
    require_model_shape(decisions, model, reference);
    std::vector<Point> objectives;
    objectives.reserve(decisions.size());
    for (const auto& x : decisions) {
        const Eigen::VectorXd f = model.evaluate(x);
        if (static_cast<std::size_t>(f.size()) != model.num_objectives()) {
            throw DimensionError("model returned " + std::to_string(f.size()) + " objective values");
        }
        objectives.emplace_back(f.data(), f.data() + f.size());
    }
    return PointSet(std::move(objectives), reference);
}

GradientVector hv_gradient(const PointSet& set) {
    require_general_position(set);
    const std::size_t n = set.size();
    const std::size_t m = set.dim();

    GradientVector out;
    out.values.assign(n * m, 0.0);
    const auto kept = pareto_filter(set);
    for (std::size_t i = 0, next = 0; i < n; ++i) {
        if (next < kept.size() && kept[next] == i) ++next;
        else out.dominated_points.push_back(i);
    }

    std::vector<Point> lower;
    for (std::size_t i : kept) {
        const Point& y = set[i];
        for (std::size_t k = 0; k < m; ++k) {
            lower.clear();
            for (std::size_t j : kept) {
                if (set[j][k] < y[k]) lower.push_back(project(set[j], k));
            }
            out.values[i * m + k] = -hvc(project(y, k), lower, project(set.reference(), k));
        }
    }
    return out;
}

GradientVector hv_gradient_decision(const std::vector<Point>& decisions, const ObjectiveModel& model,
                                    const Point& reference) {
    const PointSet objectives = evaluate_points(decisions, model, reference);
    const GradientVector objective_grad = hv_gradient(objectives);
    const std::size_t m = model.num_objectives();
    const std::size_t d = model.num_variables();

    GradientVector out;
    out.dominated_points = objective_grad.dominated_points;
    out.values.assign(decisions.size() * d, 0.0);
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        const Eigen::MatrixXd jac = model.jacobian(decisions[i]);
        if (static_cast<std::size_t>(jac.rows()) != m || static_cast<std::size_t>(jac.cols()) != d) {
            throw DimensionError("model Jacobian has shape " + std::to_string(jac.rows()) + "x" +
                                 std::to_string(jac.cols()) + ", expected " + std::to_string(m) + "x" +
                                 std::to_string(d));
        }
        const Eigen::Map<const Eigen::RowVectorXd> block(objective_grad.values.data() + i * m,
                                                         static_cast<Eigen::Index>(m));
        const Eigen::RowVectorXd chained = block * jac;
        std::copy(chained.data(), chained.data() + d, out.values.begin() + static_cast<std::ptrdiff_t>(i * d));
    }
    return out;
}

} // namespace hvh
