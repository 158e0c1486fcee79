#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hvh/core.hpp"

namespace hvh {

struct HvResult {
    double value = 0.0;
    /// Points that contribute nothing because another point (or an identical earlier
    /// copy) dominates them.
    std::size_t dominated_count = 0;
};

/// Exact Lebesgue measure of the region dominated by `set` and bounded by its reference.
///
/// Dimension 1 is a single extent, 2 a sorted sweep, 3 a dimension sweep over a
/// balanced tree (O(n log n)), and 4+ slices along the last axis and recurses on the
/// accumulated projections.
HvResult hv(const PointSet& set);

/// Measure without validation; every point must satisfy y < reference componentwise.
/// A 0-dimensional set has measure 1 when non-empty and 0 otherwise.
double hv_value(std::span<const Point> points, std::span<const double> reference);

/// HV(others ∪ {y}) − HV(others): the measure dominated by y alone. Exactly 0 when some
/// member of `others` weakly dominates y.
double hvc(std::span<const double> y, std::span<const Point> others, std::span<const double> reference);

} // namespace hvh
