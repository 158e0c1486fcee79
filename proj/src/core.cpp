#include "hvh/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

namespace hvh {

namespace {

std::string describe(const GeneralPositionReport& report) {
    std::ostringstream os;
    os << "points are not in general position:";
    for (const auto& tie : report.offending_pairs) {
        os << " (" << tie.first << "," << tie.second << ",axis " << tie.axis << ")";
    }
    return os.str();
}

void require_same_dim(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    }
}

} // namespace

GeneralPositionError::GeneralPositionError(GeneralPositionReport report)
    : ValidationError(describe(report)), report_(std::move(report)) {}

PointSet::PointSet(std::vector<Point> points, Point reference)
    : points_(std::move(points)), reference_(std::move(reference)) {
    for (double r : reference_) {
        if (!std::isfinite(r)) throw ValidationError("reference point has a non-finite coordinate");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (p.size() != reference_.size()) {
            throw DimensionError("point " + std::to_string(i) + " has dimension " +
                                 std::to_string(p.size()) + ", reference has " +
                                 std::to_string(reference_.size()));
        }
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (!std::isfinite(p[k])) {
                throw ValidationError("point " + std::to_string(i) + " has a non-finite coordinate");
            }
            if (!(p[k] < reference_[k])) {
                throw ValidationError("point " + std::to_string(i) +
                                      " does not strictly dominate the reference on axis " +
                                      std::to_string(k));
            }
        }
    }
}

bool weakly_dominates(std::span<const double> p, std::span<const double> q) noexcept {
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] > q[k]) return false;
    }
    return true;
}

bool dominates(std::span<const double> p, std::span<const double> q) {
    require_same_dim(p, q);
    bool strict = false;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] > q[k]) return false;
        if (p[k] < q[k]) strict = true;
    }
    return strict;
}

Point project(std::span<const double> p, std::size_t axis) {
    if (axis >= p.size()) {
        throw DimensionError("projection axis " + std::to_string(axis) + " out of range for dimension " +
                             std::to_string(p.size()));
    }
    Point out;
    out.reserve(p.size() - 1);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k != axis) out.push_back(p[k]);
    }
    return out;
}

Point clip(std::span<const double> a, std::span<const double> b) {
    require_same_dim(a, b);
    Point out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = std::max(a[k], b[k]);
    return out;
}

std::vector<double> concat(const std::vector<Point>& points) {
    std::vector<double> out;
    if (!points.empty()) out.reserve(points.size() * points.front().size());
    for (const auto& p : points) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<double> concat(const PointSet& set) { return concat(set.points()); }

std::vector<Point> deconcat(std::span<const double> values, std::size_t dim) {
    if (dim == 0) {
        if (!values.empty()) throw DimensionError("cannot split a non-empty vector into 0-dimensional points");
        return {};
    }
    if (values.size() % dim != 0) {
        throw DimensionError("vector length " + std::to_string(values.size()) + " is not divisible by " +
                             std::to_string(dim));
    }
    std::vector<Point> out;
    out.reserve(values.size() / dim);
    for (std::size_t off = 0; off < values.size(); off += dim) {
        out.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(off),
                         values.begin() + static_cast<std::ptrdiff_t>(off + dim));
    }
    return out;
}

GeneralPositionReport check_general_position(const std::vector<Point>& points) {
    GeneralPositionReport report;
    if (points.empty()) return report;
    const std::size_t m = points.front().size();
    std::vector<std::size_t> order(points.size());
    for (std::size_t k = 0; k < m; ++k) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return points[a][k] < points[b][k]; });
        for (std::size_t lo = 0; lo < order.size();) {
            std::size_t hi = lo + 1;
            while (hi < order.size() && points[order[hi]][k] == points[order[lo]][k]) ++hi;
            for (std::size_t a = lo; a < hi; ++a) {
                for (std::size_t b = a + 1; b < hi; ++b) {
                    report.offending_pairs.push_back(
                        {std::min(order[a], order[b]), std::max(order[a], order[b]), k});
                }
            }
            lo = hi;
        }
    }
    std::sort(report.offending_pairs.begin(), report.offending_pairs.end(),
              [](const CoordinateTie& x, const CoordinateTie& y) {
                  return std::tie(x.first, x.second, x.axis) < std::tie(y.first, y.second, y.axis);
              });
    report.ok = report.offending_pairs.empty();
    return report;
}

GeneralPositionReport check_general_position(const PointSet& set) {
    return check_general_position(set.points());
}

void require_general_position(const PointSet& set) {
    auto report = check_general_position(set);
    if (!report.ok) throw GeneralPositionError(std::move(report));
}

std::vector<std::size_t> pareto_filter(const std::vector<Point>& points) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            if (j == i) continue;
            // an identical earlier point shadows this one
            if (points[j] == points[i]) dominated = j < i;
            else dominated = weakly_dominates(points[j], points[i]);
        }
        if (!dominated) kept.push_back(i);
    }
    return kept;
}

std::vector<std::size_t> pareto_filter(const PointSet& set) { return pareto_filter(set.points()); }

} // namespace hvh
