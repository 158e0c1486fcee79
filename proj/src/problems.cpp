#include "hvh/problems.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hvh/gradient.hpp"
#include "hvh/hessian_nd.hpp"
#include "hvh/hypervolume.hpp"

namespace hvh::problems {

QuadraticMop::QuadraticMop(std::vector<Point> centers) : centers_(std::move(centers)) {
    if (centers_.size() < 2) throw std::invalid_argument("a quadratic MOP needs at least two objectives");
    dim_ = centers_.front().size();
    if (dim_ == 0) throw std::invalid_argument("centers must have at least one coordinate");
    for (std::size_t a = 0; a < centers_.size(); ++a) {
        if (centers_[a].size() != dim_) throw std::invalid_argument("centers differ in dimension");
        for (std::size_t b = 0; b < a; ++b) {
            if (centers_[a] == centers_[b]) throw std::invalid_argument("centers must be distinct");
        }
    }
}

Eigen::VectorXd QuadraticMop::evaluate(std::span<const double> x) const {
    Eigen::VectorXd f(static_cast<Eigen::Index>(centers_.size()));
    for (std::size_t j = 0; j < centers_.size(); ++j) {
        double s = 0.0;
        for (std::size_t v = 0; v < dim_; ++v) s += (x[v] - centers_[j][v]) * (x[v] - centers_[j][v]);
        f(static_cast<Eigen::Index>(j)) = s;
    }
    return f;
}

Eigen::MatrixXd QuadraticMop::jacobian(std::span<const double> x) const {
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(centers_.size()), static_cast<Eigen::Index>(dim_));
    for (std::size_t j = 0; j < centers_.size(); ++j) {
        for (std::size_t v = 0; v < dim_; ++v) {
            jac(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(v)) = 2.0 * (x[v] - centers_[j][v]);
        }
    }
    return jac;
}

std::vector<Eigen::MatrixXd> QuadraticMop::hessians(std::span<const double>) const {
    const auto d = static_cast<Eigen::Index>(dim_);
    return std::vector<Eigen::MatrixXd>(centers_.size(), 2.0 * Eigen::MatrixXd::Identity(d, d));
}

QuadraticMop make_quadratic_mop(std::size_t d, std::size_t m, std::vector<Point> centers) {
    if (centers.size() != m) {
        throw std::invalid_argument("expected " + std::to_string(m) + " centers, got " + std::to_string(centers.size()));
    }
    for (const auto& c : centers) {
        if (c.size() != d) throw std::invalid_argument("center of dimension " + std::to_string(c.size()) + ", expected " + std::to_string(d));
    }
    return QuadraticMop(std::move(centers));
}

Eigen::VectorXd LinearModel::evaluate(std::span<const double> x) const {
    return b_ * Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

Eigen::MatrixXd LinearModel::jacobian(std::span<const double>) const { return b_; }

std::vector<Eigen::MatrixXd> LinearModel::hessians(std::span<const double>) const {
    return std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(b_.rows()), Eigen::MatrixXd::Zero(b_.cols(), b_.cols()));
}

PointSet random_front(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m == 0) throw std::invalid_argument("random_front needs m >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const auto draw = [&] {
        Point p(m);
        double norm = 0.0;
        do {
            norm = 0.0;
            for (auto& v : p) {
                v = std::abs(normal(rng));
                norm += v * v;
            }
        } while (norm == 0.0);
        norm = std::sqrt(norm);
        for (auto& v : p) v /= norm;
        return p;
    };

    std::vector<Point> points(n);
    for (auto& p : points) p = draw();
    // ties have probability zero but are cheap to rule out
    for (auto report = check_general_position(points); !report.ok; report = check_general_position(points)) {
        for (const auto& tie : report.offending_pairs) points[tie.second] = draw();
    }
    return PointSet(std::move(points), Point(m, 1.1));
}

std::vector<Point> random_start(const QuadraticMop& model, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> along(0.05, 0.95);
    std::uniform_real_distribution<double> across(-0.1, 0.1);
    const Point& a = model.centers()[0];
    const Point& b = model.centers()[1];
    std::vector<Point> out(n, Point(model.num_variables()));
    for (auto& x : out) {
        const double t = along(rng);
        for (std::size_t v = 0; v < x.size(); ++v) x[v] = a[v] + t * (b[v] - a[v]) + across(rng);
    }
    return out;
}

namespace {

/// LDLT's own estimate solves with zero pivots treated as zero, so an exactly singular
/// block can still look well conditioned. The pivot spread catches that.
double pivot_ratio(const Eigen::LDLT<Eigen::MatrixXd>& ldlt) {
    const Eigen::VectorXd pivots = ldlt.vectorD().cwiseAbs();
    if (pivots.size() == 0) return 0.0;
    const double largest = pivots.maxCoeff();
    return largest > 0.0 ? pivots.minCoeff() / largest : 0.0;
}

} // namespace

std::string to_string(StepKind kind) {
    switch (kind) {
    case StepKind::newton:
        return "newton";
    case StepKind::gradient_fallback:
        return "gradient_fallback";
    case StepKind::stalled:
        return "stalled";
    }
    return "unknown";
}

double decision_hv(const std::vector<Point>& decisions, const ObjectiveModel& model, const Point& reference) {
    const PointSet objectives = evaluate_points(decisions, model, reference);
    return hv_value(objectives.points(), objectives.reference());
}

NewtonResult newton_step(const std::vector<Point>& decisions, const ObjectiveModel& model, const Point& reference,
                         const NewtonOptions& options) {
    const std::size_t d = model.num_variables();
    NewtonResult out;
    out.hv_before = decision_hv(decisions, model, reference);

    const GradientVector grad = hv_gradient_decision(decisions, model, reference);
    const Eigen::MatrixXd hessian = hessian_decision(decisions, model, reference).to_dense();
    const Eigen::Map<const Eigen::VectorXd> g(grad.values.data(), static_cast<Eigen::Index>(grad.values.size()));

    Eigen::VectorXd direction;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(hessian);
    out.rcond = ldlt.info() == Eigen::Success ? std::min(ldlt.rcond(), pivot_ratio(ldlt)) : 0.0;
    if (out.rcond >= options.min_rcond && std::isfinite(out.rcond)) {
        direction = -ldlt.solve(g);
        out.kind = StepKind::newton;
    } else {
        direction = g;
        out.kind = StepKind::gradient_fallback;
        out.singular = true;
    }

    std::vector<Point> trial = decisions;
    double t = 1.0;
    for (std::size_t halving = 0; halving <= options.max_halvings; ++halving, t *= 0.5) {
        for (std::size_t i = 0; i < trial.size(); ++i) {
            for (std::size_t v = 0; v < d; ++v) {
                trial[i][v] = decisions[i][v] + t * direction(static_cast<Eigen::Index>(i * d + v));
            }
        }
        double value = 0.0;
        try {
            const PointSet objectives = evaluate_points(trial, model, reference);
            if (!check_general_position(objectives).ok) continue;
            value = hv_value(objectives.points(), objectives.reference());
        } catch (const ValidationError&) {
            continue;
        }
        if (value >= out.hv_before) {
            out.next = trial;
            out.hv_after = value;
            out.step_length = t;
            out.halvings = halving;
            return out;
        }
    }
    out.next = decisions;
    out.hv_after = out.hv_before;
    out.halvings = options.max_halvings;
    out.kind = StepKind::stalled;
    return out;
}

} // namespace hvh::problems
