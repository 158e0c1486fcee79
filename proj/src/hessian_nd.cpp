#include "hvh/hessian_nd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hvh/gradient.hpp"
#include "hvh/hypervolume.hpp"

namespace hvh {

namespace {

/// ∂hvc(y, others)/∂y_p; assumes y is not weakly dominated by any member of others.
double hvc_partial(std::span<const double> y, std::span<const Point> others, std::span<const double> reference,
                   std::size_t p) {
    std::vector<Point> lower;
    for (const auto& z : others) {
        if (z[p] < y[p]) lower.push_back(project(z, p));
    }
    return -hvc(project(y, p), lower, project(reference, p));
}

/// Maps an axis of the k-projected space back to the full space.
constexpr std::size_t lift(std::size_t p, std::size_t k) { return p < k ? p : p + 1; }

} // namespace

HvcDerivative hvc_derivative(std::span<const double> y, std::span<const Point> others,
                             std::span<const double> reference) {
    if (y.empty()) throw DimensionError("hvc_derivative needs dimension >= 1");
    if (y.size() != reference.size()) throw DimensionError("hvc_derivative: point and reference dimensions differ");
    HvcDerivative out{std::vector<double>(y.size(), 0.0)};
    for (const auto& z : others) {
        if (z.size() != y.size()) throw DimensionError("hvc_derivative: point dimensions differ");
        if (weakly_dominates(z, y)) return out;
    }
    for (std::size_t p = 0; p < y.size(); ++p) out.values[p] = hvc_partial(y, others, reference, p);
    return out;
}

std::vector<MatrixEntry> hessian_objective_columns(const PointSet& set) {
    require_general_position(set);
    const std::size_t m = set.dim();
    std::vector<MatrixEntry> out;
    if (m < 2) return out;

    const auto kept = pareto_filter(set);
    std::vector<std::size_t> lower_idx;
    std::vector<Point> lower;
    std::vector<Point> clipped;
    std::vector<Point> rest;

    for (std::size_t i : kept) {
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t col = i * m + k;
            const Point y = project(set[i], k);
            const Point ref = project(set.reference(), k);

            lower_idx.clear();
            lower.clear();
            for (std::size_t j : kept) {
                if (set[j][k] < set[i][k]) {
                    lower_idx.push_back(j);
                    lower.push_back(project(set[j], k));
                }
            }

            // ∂/∂y^(i): −∂hvc(y, lower)/∂y
            const HvcDerivative own = hvc_derivative(y, lower, ref);
            for (std::size_t p = 0; p < m - 1; ++p) {
                const double v = -own.values[p];
                if (v != 0.0) out.push_back({i * m + lift(p, k), col, v});
            }

            // ∂/∂y^(j): with every lower point clipped by y, hvc(y, lower) = box(y) − HV(clipped),
            // so the derivative is ∂HV(clipped)/∂z for each coordinate the clip leaves free.
            clipped.clear();
            for (const auto& z : lower) clipped.push_back(clip(z, y));
            for (std::size_t a = 0; a < clipped.size(); ++a) {
                rest.clear();
                bool covered = false;
                for (std::size_t b = 0; b < clipped.size(); ++b) {
                    if (b == a) continue;
                    covered = covered || weakly_dominates(clipped[b], clipped[a]);
                    rest.push_back(clipped[b]);
                }
                if (covered) continue;
                for (std::size_t p = 0; p < m - 1; ++p) {
                    if (!(lower[a][p] > y[p])) continue; // clipped coordinate is frozen at y_p
                    const double v = hvc_partial(clipped[a], rest, ref, p);
                    if (v != 0.0) out.push_back({lower_idx[a] * m + lift(p, k), col, v});
                }
            }
        }
    }
    return out;
}

SparseSymMatrix hessian_objective(const PointSet& set) {
    const std::size_t dim = set.size() * set.dim();
    auto columns = hessian_objective_columns(set);
    // A missing mirror emission is an implicit zero; from_entries checks agreement of
    // the pairs that are present, so check unpaired ones here.
    std::vector<MatrixEntry> upper;
    std::vector<MatrixEntry> lower;
    for (const auto& e : columns) (e.row <= e.col ? upper : lower).push_back(e);
    const auto by_pos = [](const MatrixEntry& a, const MatrixEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    };
    for (auto& e : lower) std::swap(e.row, e.col);
    std::sort(upper.begin(), upper.end(), by_pos);
    std::sort(lower.begin(), lower.end(), by_pos);

    constexpr double tol = 1e-9;
    std::vector<MatrixEntry> merged;
    std::size_t u = 0;
    std::size_t l = 0;
    while (u < upper.size() || l < lower.size()) {
        MatrixEntry a{0, 0, 0.0};
        MatrixEntry b{0, 0, 0.0};
        if (l == lower.size() || (u < upper.size() && by_pos(upper[u], lower[l]))) {
            a = upper[u++];
            b = {a.row, a.col, 0.0};
        } else if (u == upper.size() || by_pos(lower[l], upper[u])) {
            b = lower[l++];
            a = {b.row, b.col, 0.0};
        } else {
            a = upper[u++];
            b = lower[l++];
        }
        if (a.row == a.col) {
            merged.push_back(a);
            continue;
        }
        if (std::abs(a.value - b.value) > tol * std::max(1.0, std::abs(a.value))) {
            throw Error("asymmetric Hessian at (" + std::to_string(a.row) + "," + std::to_string(a.col) +
                        "): " + std::to_string(a.value) + " vs " + std::to_string(b.value));
        }
        merged.push_back({a.row, a.col, 0.5 * (a.value + b.value)});
    }
    return SparseSymMatrix::from_entries(dim, std::move(merged));
}

DecisionHessian hessian_decision_parts(const std::vector<Point>& decisions, const ObjectiveModel& model,
                                       const Point& reference) {
    const PointSet objectives = evaluate_points(decisions, model, reference);
    const std::size_t n = decisions.size();
    const std::size_t m = model.num_objectives();
    const std::size_t d = model.num_variables();
    const auto nd = static_cast<Eigen::Index>(n * d);
    const auto di = static_cast<Eigen::Index>(d);

    DecisionHessian out;
    out.objective_hessian = hessian_objective(objectives);
    const GradientVector grad = hv_gradient(objectives);

    std::vector<Eigen::MatrixXd> jacobians;
    jacobians.reserve(n);
    for (const auto& x : decisions) {
        jacobians.push_back(model.jacobian(x));
        if (static_cast<std::size_t>(jacobians.back().rows()) != m ||
            static_cast<std::size_t>(jacobians.back().cols()) != d) {
            throw DimensionError("model Jacobian has shape " + std::to_string(jacobians.back().rows()) + "x" +
                                 std::to_string(jacobians.back().cols()));
        }
    }

    out.chained = Eigen::MatrixXd::Zero(nd, nd);
    for (const auto& e : out.objective_hessian.full_entries()) {
        const std::size_t i = e.row / m;
        const std::size_t j = e.col / m;
        const auto k = static_cast<Eigen::Index>(e.row % m);
        const auto l = static_cast<Eigen::Index>(e.col % m);
        out.chained.block(static_cast<Eigen::Index>(i * d), static_cast<Eigen::Index>(j * d), di, di) +=
            e.value * jacobians[i].row(k).transpose() * jacobians[j].row(l);
    }

    out.tensor_term = Eigen::MatrixXd::Zero(nd, nd);
    for (std::size_t a = 0; a < n; ++a) {
        const auto blocks = model.hessians(decisions[a]);
        if (blocks.size() != m) throw DimensionError("model returned " + std::to_string(blocks.size()) + " Hessian blocks");
        auto target = out.tensor_term.block(static_cast<Eigen::Index>(a * d), static_cast<Eigen::Index>(a * d), di, di);
        for (std::size_t b = 0; b < m; ++b) {
            if (blocks[b].rows() != di || blocks[b].cols() != di) {
                throw DimensionError("model Hessian block has shape " + std::to_string(blocks[b].rows()) + "x" +
                                     std::to_string(blocks[b].cols()));
            }
            target += grad.values[a * m + b] * blocks[b];
        }
    }

    const Eigen::MatrixXd total = out.chained + out.tensor_term;
    const Eigen::MatrixXd symmetric = 0.5 * (total + total.transpose());
    out.hessian = SparseSymMatrix::from_dense(symmetric);
    return out;
}

SparseSymMatrix hessian_decision(const std::vector<Point>& decisions, const ObjectiveModel& model,
                                 const Point& reference) {
    return hessian_decision_parts(decisions, model, reference).hessian;
}

} // namespace hvh
