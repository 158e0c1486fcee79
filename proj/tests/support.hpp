#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "hvh/core.hpp"
#include "hvh/oracle.hpp"

namespace hvh::testing {

/// n uniform points in (0, 1)^m with reference (1.2, ..., 1.2), redrawn until every
/// coordinate gap (and the gap to the reference) is at least `min_margin`. Dominated
/// points are allowed.
inline PointSet random_set(std::size_t n, std::size_t m, std::mt19937_64& rng, double min_margin = 1e-2) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        std::vector<Point> points(n, Point(m));
        for (auto& p : points) {
            for (auto& v : p) v = unit(rng);
        }
        PointSet set(std::move(points), Point(m, 1.2));
        if (n == 0 || oracle::general_position_margin(set) >= min_margin) return set;
    }
}

/// Integer points with coordinates in [0, hi) and reference hi on every axis. Ties
/// and dominated points are allowed.
inline PointSet random_integer_set(std::size_t n, std::size_t m, int hi, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coord(0, hi - 1);
    std::vector<Point> points(n, Point(m));
    for (auto& p : points) {
        for (auto& v : p) v = coord(rng);
    }
    return PointSet(std::move(points), Point(m, static_cast<double>(hi)));
}

inline PointSet example1() { return PointSet({{5, 3, 7}, {2, 1, 10}}, {9, 10, 12}); }
inline PointSet example2() { return PointSet({{8, 7, 10}, {4, 11, 17}, {2, 9, 21}}, {10, 13, 23}); }
inline PointSet example3() {
    return PointSet({{16, 23, 1}, {14, 32, 2}, {12, 27, 3}, {10, 21, 4}, {8, 33, 5}, {6.5, 31, 6}}, {17, 35, 7});
}

} // namespace hvh::testing
