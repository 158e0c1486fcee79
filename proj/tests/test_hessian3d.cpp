#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hvh/hessian3d.hpp"
#include "hvh/hessian_nd.hpp"
#include "hvh/oracle.hpp"
#include "hvh/problems.hpp"
#include "support.hpp"

using namespace hvh;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

TEST_CASE("sweep front") {
    SUBCASE("first insertion sees both sentinels") {
        SweepFront front(10, 10);
        CHECK(front.size() == 0);
        const auto ins = front.insert(4, 5, 0);
        CHECK(ins.dominated.empty());
        CHECK(ins.lower_l.is_sentinel());
        CHECK(ins.lower_l.l == -kInf);
        CHECK(ins.lower_l.w == 10);
        CHECK(ins.lower_w.is_sentinel());
        CHECK(ins.lower_w.l == 10);
        CHECK(ins.lower_w.w == -kInf);
        CHECK(front.size() == 1);
    }

    SUBCASE("neighbours without a purge") {
        SweepFront front(10, 10);
        front.insert(2, 6, 7);
        const auto ins = front.insert(4, 5, 8);
        CHECK(ins.dominated.empty());
        REQUIRE(ins.lower_l.index.has_value());
        CHECK(*ins.lower_l.index == 7);
        CHECK(ins.lower_w.is_sentinel());
        CHECK(front.size() == 2);
    }

    SUBCASE("full purge") {
        SweepFront front(10, 10);
        front.insert(3, 8, 0);
        front.insert(5, 6, 1);
        front.insert(7, 4, 2);
        const auto ins = front.insert(1, 1, 3);
        REQUIRE(ins.dominated.size() == 3);
        CHECK(ins.dominated[0].l == 3);
        CHECK(ins.dominated[2].l == 7);
        CHECK(ins.lower_l.is_sentinel());
        CHECK(ins.lower_w.is_sentinel());
        CHECK(front.size() == 1);
        const auto members = front.members();
        CHECK(members.size() == 3);
    }

    SUBCASE("partial purge keeps the staircase") {
        SweepFront front(10, 10);
        front.insert(1, 9, 0);
        front.insert(3, 7, 1);
        front.insert(5, 5, 2);
        front.insert(8, 2, 3);
        const auto ins = front.insert(2, 4, 4);
        REQUIRE(ins.dominated.size() == 2);
        CHECK(*ins.dominated[0].index == 1);
        CHECK(*ins.dominated[1].index == 2);
        CHECK(*ins.lower_l.index == 0);
        CHECK(*ins.lower_w.index == 3);
        const auto members = front.members();
        for (std::size_t a = 1; a < members.size(); ++a) {
            CHECK(members[a - 1].l < members[a].l);
            CHECK(members[a - 1].w > members[a].w);
        }
    }

    SUBCASE("covered and duplicate keys are rejected") {
        SweepFront front(10, 10);
        front.insert(3, 3, 0);
        CHECK(front.covers(4, 4));
        CHECK_FALSE(front.covers(2, 4));
        CHECK_THROWS_AS(front.insert(4, 4, 1), Error);
        CHECK_THROWS_AS(front.insert(3, 1, 1), Error);
    }
}

TEST_CASE("single point is a product of extents") {
    const PointSet set({{1, 2, 4}}, {3, 7, 11}); // r - y = (2, 5, 7)
    const auto h = hessian_3d_sweep(set);
    CHECK(h.at(0, 1) == 7.0);
    CHECK(h.at(0, 2) == 5.0);
    CHECK(h.at(1, 2) == 2.0);
    for (std::size_t k = 0; k < 3; ++k) CHECK(h.at(k, k) == 0.0);
    CHECK(h.nonzero_count() == 6);
}

TEST_CASE("worked examples") {
    const auto ex1 = hessian_3d_sweep(testing::example1());
    CHECK(ex1.at(0, 2) == 7.0);
    CHECK(ex1.at(0, 5) == -7.0);
    CHECK(ex1 == hessian_objective(testing::example1()));

    const auto ex2 = hessian_3d_sweep(testing::example2());
    CHECK(ex2.nonzero_count() == 30);
    CHECK(ex2 == hessian_objective(testing::example2()));

    const auto ex3 = hessian_3d_sweep(testing::example3());
    const auto general = hessian_objective(testing::example3());
    CHECK(ex3.stored_count() == general.stored_count());
    CHECK((ex3.to_dense() - general.to_dense()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("a four-point front with more than 12n-6 non-zeros") {
    // Confirms that the 12n-6 count is not an upper bound for every front.
    const PointSet set({{1, 3, 3}, {2, 1, 4}, {3, 4, 1}, {4, 2, 2}}, {5, 5, 5});
    CHECK(pareto_filter(set).size() == 4);
    const auto h = hessian_3d_sweep(set);
    CHECK(h.nonzero_count() == 44);
    const auto report = oracle::verify_derivatives(set);
    CHECK(report.ok());
    CHECK(report.fd_hessian_nonzeros == 44);
}

TEST_CASE("input checks") {
    CHECK_THROWS_AS(hessian_3d_sweep(PointSet({{1, 2}}, {3, 3})), DimensionError);
    CHECK_THROWS_AS(hessian_3d_sweep(PointSet({{1, 2, 3}, {1, 0, 4}}, {5, 5, 5})), GeneralPositionError);
    CHECK(hessian_3d_sweep(PointSet({}, {1, 1, 1})).nonzero_count() == 0);
}

TEST_CASE("dominated points have empty rows") {
    const PointSet set({{1, 2, 3}, {2, 3, 4}, {3, 0.5, 1}}, {5, 5, 5});
    const auto h = hessian_3d_sweep(set);
    for (const auto& e : h.full_entries()) {
        CHECK(e.row / 3 != 1);
        CHECK(e.col / 3 != 1);
    }
    CHECK(h == hessian_objective(set));
}

TEST_CASE("purges per sweep equal n minus the final front") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const PointSet set = problems::random_front(5 + seed, 3, seed);
        SweepStats stats;
        hessian_3d_sweep(set, &stats);
        for (std::size_t s = 0; s < 3; ++s) {
            CHECK(stats.inserted[s] == set.size());
            CHECK(stats.purged[s] == stats.inserted[s] - stats.final_front[s]);
            CHECK(stats.purged[s] <= set.size() - 1);
        }
    }
}

TEST_CASE("count does not depend on point order") {
    std::mt19937_64 rng(2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PointSet set = problems::random_front(12, 3, seed);
        auto shuffled = set.points();
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(hessian_3d_sweep(PointSet(shuffled, set.reference())).nonzero_count() ==
              hessian_3d_sweep(set).nonzero_count());
    }
}

TEST_CASE("agrees with the general algorithm and with finite differences") {
    std::mt19937_64 rng(13);
    const oracle::FdConfig hcfg{0x1p-13, 1e-5, 1e-7};
    for (int it = 0; it < 40; ++it) {
        const std::size_t n = 1 + static_cast<std::size_t>(it % 10);
        const PointSet set = it % 2 == 0 ? problems::random_front(n, 3, 100 + it) : testing::random_set(n, 3, rng);
        if (oracle::general_position_margin(set) < 1e-2) continue;
        const auto sweep = hessian_3d_sweep(set);
        const auto general = hessian_objective(set);
        REQUIRE(sweep.stored_count() == general.stored_count());
        for (std::size_t a = 0; a < sweep.stored_count(); ++a) {
            CHECK(sweep.entries()[a].row == general.entries()[a].row);
            CHECK(sweep.entries()[a].col == general.entries()[a].col);
            CHECK(std::abs(sweep.entries()[a].value - general.entries()[a].value) <= 1e-12);
        }
        const auto report = oracle::verify_derivatives(set, oracle::FdConfig::gradient_defaults(), hcfg);
        CHECK(oracle::compare(sweep.to_dense(), report.fd_hessian, hcfg.abs_tol, hcfg.rel_tol).ok());
    }
}
