#include "doctest.h"

#include <cmath>

#include "hvh/gradient.hpp"
#include "hvh/hypervolume.hpp"
#include "hvh/oracle.hpp"
#include "hvh/problems.hpp"

using namespace hvh;
using problems::make_quadratic_mop;

TEST_CASE("quadratic problem") {
    const auto model = make_quadratic_mop(2, 2, {{0, 0}, {1, 0}});
    CHECK(model.num_objectives() == 2);
    CHECK(model.num_variables() == 2);

    const std::vector<double> origin{0, 0};
    const Eigen::VectorXd f = model.evaluate(origin);
    CHECK(f(0) == 0.0);
    CHECK(f(1) == 1.0);

    const auto unit_model = make_quadratic_mop(2, 2, {{0, 0}, {3, 3}});
    const Eigen::MatrixXd jac = unit_model.jacobian(std::vector<double>{1, 1});
    CHECK(jac(0, 0) == 2.0);
    CHECK(jac(0, 1) == 2.0);

    for (const auto& block : model.hessians(origin)) CHECK(block.isApprox(2.0 * Eigen::MatrixXd::Identity(2, 2)));

    CHECK_THROWS_AS(make_quadratic_mop(2, 3, {{0, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_quadratic_mop(2, 2, {{0, 0}, {1, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_quadratic_mop(2, 2, {{0, 0}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_quadratic_mop(2, 1, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("model derivatives match finite differences") {
    const auto model = make_quadratic_mop(3, 3, {{0, 0, 0}, {1, 0, 2}, {0, -1, 1}});
    const std::vector<double> x{0.3, -0.4, 0.9};
    const auto cfg = oracle::FdConfig::gradient_defaults();
    const Eigen::MatrixXd jac = model.jacobian(x);
    const auto blocks = model.hessians(x);
    for (Eigen::Index j = 0; j < 3; ++j) {
        const auto fj = [&](std::span<const double> at) { return model.evaluate(at)(j); };
        const auto g = oracle::fd_gradient(fj, x, cfg);
        for (Eigen::Index v = 0; v < 3; ++v) CHECK(std::abs(g[static_cast<std::size_t>(v)] - jac(j, v)) < 1e-7);
        const auto h = oracle::fd_hessian(fj, x, oracle::FdConfig::hessian_defaults());
        CHECK((h - blocks[static_cast<std::size_t>(j)]).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("random front generator") {
    const PointSet a = problems::random_front(50, 3, 9);
    const PointSet b = problems::random_front(50, 3, 9);
    CHECK(a.points() == b.points());
    CHECK(check_general_position(a).ok);
    CHECK(pareto_filter(a).size() == 50);
    for (const auto& p : a.points()) {
        double norm = 0.0;
        for (double v : p) {
            CHECK(v > 0.0);
            CHECK(v < 1.0);
            norm += v * v;
        }
        CHECK(norm == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(problems::random_front(3, 0, 1), std::invalid_argument);
}

TEST_CASE("newton step") {
    const auto model = make_quadratic_mop(2, 2, {{0, 0}, {1, 0}});
    const Point ref{2, 2};

    SUBCASE("never decreases the hypervolume") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto x = problems::random_start(model, 2, seed);
            const auto result = problems::newton_step(x, model, ref);
            CHECK(result.hv_after >= result.hv_before);
            CHECK(result.hv_after == problems::decision_hv(result.next, model, ref));
        }
    }

    SUBCASE("a stationary set barely moves") {
        // iterate to a local optimum, then take one more step
        auto x = problems::random_start(model, 3, 4);
        for (int it = 0; it < 60; ++it) x = problems::newton_step(x, model, ref).next;
        const auto result = problems::newton_step(x, model, ref);
        const auto grad = hv_gradient_decision(x, model, ref).values;
        double norm = 0.0;
        for (double v : grad) norm = std::max(norm, std::abs(v));
        CHECK(norm < 1e-8);
        CHECK(std::abs(result.hv_after - result.hv_before) <= 1e-10);
        double moved = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t v = 0; v < 2; ++v) moved = std::max(moved, std::abs(result.next[i][v] - x[i][v]));
        }
        CHECK(moved < 1e-6);
    }

    SUBCASE("a dominated image makes the hessian singular") {
        // f(0.4, 0.1) = (0.17, 0.37) dominates f(0.5, 0.5) = (0.5, 0.5)
        std::vector<Point> x{{0.4, 0.1}, {0.5, 0.5}};
        const auto result = problems::newton_step(x, model, ref);
        CHECK(result.singular);
        CHECK(result.kind == problems::StepKind::gradient_fallback);
        CHECK(result.hv_after >= result.hv_before);
    }

    SUBCASE("step kinds print") {
        CHECK(problems::to_string(problems::StepKind::newton) == "newton");
        CHECK(problems::to_string(problems::StepKind::gradient_fallback) == "gradient_fallback");
        CHECK(problems::to_string(problems::StepKind::stalled) == "stalled");
    }
}
