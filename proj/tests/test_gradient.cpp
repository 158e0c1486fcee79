#include "doctest.h"

#include <cmath>
#include <random>

#include "hvh/gradient.hpp"
#include "hvh/hypervolume.hpp"
#include "hvh/oracle.hpp"
#include "hvh/problems.hpp"
#include "support.hpp"

using namespace hvh;

namespace {

double hv_of(std::span<const double> y, std::size_t m, const Point& ref) {
    return hv_value(deconcat(y, m), ref);
}

} // namespace

TEST_CASE("worked examples") {
    const auto g = hv_gradient(testing::example1());
    REQUIRE(g.values.size() == 6);
    CHECK(g.values[2] == -28.0);
    CHECK(g.values[5] == -35.0);
    CHECK_FALSE(g.has_dominated());

    const auto single = hv_gradient(PointSet({{0, 0, 0}}, {1, 1, 1}));
    CHECK(single.values == std::vector<double>{-1, -1, -1});

    CHECK(hv_gradient(PointSet({}, {1, 1})).values.empty());
}

TEST_CASE("dominated points get zero entries and are reported") {
    const PointSet set({{1, 4}, {2, 5}, {3, 2}}, {6, 6});
    const auto g = hv_gradient(set);
    CHECK(g.dominated_points == std::vector<std::size_t>{1});
    CHECK(g.values[2] == 0.0);
    CHECK(g.values[3] == 0.0);
    CHECK(g.values[0] == -2.0);
    CHECK(g.values[1] == -2.0);
}

TEST_CASE("ties are rejected") {
    CHECK_THROWS_AS(hv_gradient(PointSet({{1, 2}, {1, 3}}, {5, 5})), GeneralPositionError);
}

TEST_CASE("agrees with finite differences and is non-positive") {
    const auto cfg = oracle::FdConfig::gradient_defaults();
    std::mt19937_64 rng(31);
    for (std::size_t m = 2; m <= 5; ++m) {
        for (std::size_t n = 1; n <= 8; ++n) {
            for (int it = 0; it < 5; ++it) {
                const PointSet set = testing::random_set(n, m, rng);
                const auto analytic = hv_gradient(set).values;
                const auto fd = oracle::fd_gradient(
                    [&](std::span<const double> y) { return hv_of(y, m, set.reference()); }, concat(set), cfg);
                CAPTURE(m);
                CAPTURE(n);
                CHECK(oracle::compare(analytic, fd, cfg.abs_tol, cfg.rel_tol).ok());
                for (double v : analytic) CHECK(v <= 0.0);
            }
        }
    }
}

TEST_CASE("first-order prediction along the diagonal") {
    std::mt19937_64 rng(37);
    const PointSet set = testing::random_set(6, 3, rng);
    const auto g = hv_gradient(set).values;
    double slope = 0.0;
    for (double v : g) slope += v;
    const double base = hv(set).value;
    const double eps = 1e-4;
    auto y = concat(set);
    for (auto& v : y) v -= eps;
    const double moved = hv_of(y, 3, set.reference());
    CHECK(moved > base);
    CHECK(std::abs(moved - (base - eps * slope)) < 1e-6);
}

TEST_CASE("decision-space gradient") {
    SUBCASE("identity model reproduces the objective gradient") {
        std::mt19937_64 rng(41);
        const PointSet set = testing::random_set(5, 3, rng);
        const problems::LinearModel identity(Eigen::MatrixXd::Identity(3, 3));
        CHECK(hv_gradient_decision(set.points(), identity, set.reference()).values == hv_gradient(set).values);
    }

    SUBCASE("a doubling model doubles the gradient of a single point") {
        const problems::LinearModel doubling(2.0 * Eigen::MatrixXd::Identity(2, 2));
        const std::vector<Point> x{{1, 2}};
        const Point ref{9, 9};
        const auto g = hv_gradient_decision(x, doubling, ref).values;
        const auto objective = hv_gradient(PointSet({{2, 4}}, ref)).values;
        REQUIRE(g.size() == 2);
        CHECK(g[0] == 2.0 * objective[0]);
        CHECK(g[1] == 2.0 * objective[1]);
    }

    SUBCASE("quadratic problem against finite differences") {
        const auto model = problems::make_quadratic_mop(2, 3, {{0, 0}, {1, 0}, {0.5, 1}});
        const Point ref{3, 3, 3};
        const auto cfg = oracle::FdConfig::gradient_defaults();
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto x = problems::random_start(model, 4, seed);
            const auto objectives = evaluate_points(x, model, ref);
            if (oracle::general_position_margin(objectives) < 1e-3) continue;
            const auto analytic = hv_gradient_decision(x, model, ref).values;
            const auto fd = oracle::fd_gradient(
                [&](std::span<const double> flat) { return problems::decision_hv(deconcat(flat, 2), model, ref); },
                concat(x), cfg);
            CHECK(oracle::compare(analytic, fd, cfg.abs_tol, cfg.rel_tol).ok());
        }
    }

    SUBCASE("shape mismatch") {
        const problems::LinearModel identity(Eigen::MatrixXd::Identity(2, 2));
        CHECK_THROWS_AS(hv_gradient_decision({{1, 2, 3}}, identity, {9, 9}), DimensionError);
    }
}
