#include "doctest.h"

#include <cmath>
#include <random>

#include "hvh/hypervolume.hpp"
#include "hvh/oracle.hpp"
#include "support.hpp"

using namespace hvh;

TEST_CASE("fd config validation") {
    CHECK_NOTHROW(oracle::FdConfig{}.validate());
    CHECK_THROWS_AS((oracle::FdConfig{0.0, 1e-6, 1e-8}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((oracle::FdConfig{1e-5, -1.0, 1e-8}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((oracle::FdConfig{1e-5, 1e-6, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("inclusion-exclusion") {
    CHECK(oracle::hv_inclusion_exclusion(testing::example1()) == 210.0);
    CHECK(oracle::hv_inclusion_exclusion(testing::example2()) == 236.0);
    CHECK(oracle::hv_inclusion_exclusion(PointSet({}, {1, 1})) == 0.0);
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(oracle::hv_inclusion_exclusion(testing::random_set(21, 2, rng, 0.0)), std::invalid_argument);
}

TEST_CASE("finite-difference gradient") {
    const auto cfg = oracle::FdConfig::gradient_defaults();
    const PointSet ex1 = testing::example1();
    const auto g = oracle::fd_gradient(
        [&](std::span<const double> y) { return hv_value(deconcat(y, 3), ex1.reference()); }, concat(ex1), cfg);
    CHECK(std::abs(g[2] + 28.0) < 1e-6);
    CHECK(std::abs(g[5] + 35.0) < 1e-6);

    const std::vector<double> c{1.5, -2.0, 0.25};
    const auto linear = oracle::fd_gradient(
        [&](std::span<const double> x) { return c[0] * x[0] + c[1] * x[1] + c[2] * x[2]; }, std::vector<double>{1, 2, 3},
        cfg);
    for (std::size_t a = 0; a < 3; ++a) CHECK(std::abs(linear[a] - c[a]) < 1e-9);

    const auto flat = oracle::fd_gradient([](std::span<const double>) { return 4.0; }, std::vector<double>{1, 2}, cfg);
    CHECK(flat == std::vector<double>{0.0, 0.0});
}

TEST_CASE("hv leaving the box propagates from the oracle") {
    const PointSet set({{0.99999}}, {1.0});
    const auto cfg = oracle::FdConfig::gradient_defaults();
    CHECK_THROWS_AS(oracle::fd_gradient(
                        [&](std::span<const double> y) {
                            return hv_value(PointSet(deconcat(y, 1), set.reference()).points(), set.reference());
                        },
                        concat(set), oracle::FdConfig{1e-4, cfg.rel_tol, cfg.abs_tol}),
                    ValidationError);
}

TEST_CASE("finite-difference hessian") {
    const auto cfg = oracle::FdConfig::hessian_defaults();
    const PointSet single({{5, 3, 7}}, {9, 10, 12});
    const auto h = oracle::fd_hessian(
        [&](std::span<const double> y) { return hv_value(deconcat(y, 3), single.reference()); }, concat(single), cfg);
    CHECK(std::abs(h(0, 1) - 5.0) < 1e-6);

    Eigen::Matrix3d q;
    q << 2.0, 0.5, -1.0, 0.5, 1.0, 0.0, -1.0, 0.0, 3.0;
    const auto quad = oracle::fd_hessian(
        [&](std::span<const double> x) {
            const Eigen::Map<const Eigen::Vector3d> v(x.data());
            return v.dot(q * v);
        },
        std::vector<double>{0.3, -0.7, 1.1}, cfg);
    CHECK((quad - 2.0 * q).cwiseAbs().maxCoeff() < 1e-6);

    const auto ex2 = testing::example2();
    const auto fd2 = oracle::fd_hessian(
        [&](std::span<const double> y) { return hv_value(deconcat(y, 3), ex2.reference()); }, concat(ex2), cfg);
    CHECK((fd2.array().abs() > 1e-6).count() == 30);
}

TEST_CASE("monte carlo") {
    const auto est = oracle::hv_monte_carlo(testing::example1(), 1'000'000, 2024);
    CHECK(est.std_error > 0.0);
    CHECK(std::abs(est.estimate - 210.0) <= 3.0 * est.std_error);

    const auto again = oracle::hv_monte_carlo(testing::example1(), 1'000'000, 2024);
    CHECK(again.estimate == est.estimate);

    const auto unit = oracle::hv_monte_carlo(PointSet({{0, 0}}, {1, 1}), 1000, 1);
    CHECK(unit.estimate == 1.0);
    CHECK(unit.std_error == 0.0);

    CHECK(oracle::hv_monte_carlo(PointSet({}, {1, 1}), 1000, 1).estimate == 0.0);
    CHECK_THROWS_AS(oracle::hv_monte_carlo(testing::example1(), 0, 1), std::invalid_argument);
}

TEST_CASE("compare") {
    const std::vector<double> a{1.0, 2.0, 100.0};
    const std::vector<double> b{1.0, 2.5, 100.001};
    const auto dev = oracle::compare(a, b, 1e-6, 1e-4);
    CHECK(dev.max_abs == doctest::Approx(0.5));
    CHECK(dev.violations == 1);
    CHECK_FALSE(dev.ok());
    CHECK_THROWS_AS(oracle::compare(a, std::vector<double>{1.0}, 1e-6, 1e-4), DimensionError);
}

TEST_CASE("verify derivatives on the worked examples") {
    for (const auto& set : {testing::example1(), testing::example2(), testing::example3()}) {
        const auto report = oracle::verify_derivatives(set);
        CHECK(report.ok());
        CHECK(report.hessian_deviation.max_abs < 1e-6);
        CHECK(report.hessian_nonzeros == report.fd_hessian_nonzeros);
    }
}

TEST_CASE("general position margin") {
    CHECK(oracle::general_position_margin(testing::example1()) == 2.0);
    CHECK(oracle::general_position_margin(PointSet({{1, 2}, {1.5, 4}}, {3, 5})) == 0.5);
}
