#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hvh {

/// A point in objective (or decision) space. Minimization convention.
using Point = std::vector<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched dimensions or an axis index out of range.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Input violates a precondition of the measure (reference relation, finiteness, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Two distinct points share a coordinate value on the same axis.
struct CoordinateTie {
    std::size_t first;
    std::size_t second;
    std::size_t axis;

    friend bool operator==(const CoordinateTie&, const CoordinateTie&) = default;
};

struct GeneralPositionReport {
    bool ok = true;
    std::vector<CoordinateTie> offending_pairs;
};

class GeneralPositionError : public ValidationError {
public:
    explicit GeneralPositionError(GeneralPositionReport report);
    const GeneralPositionReport& report() const noexcept { return report_; }

private:
    GeneralPositionReport report_;
};

/// n points in R^m together with a reference point that every point strictly dominates.
class PointSet {
public:
    PointSet() = default;

    /// Throws DimensionError on ragged input and ValidationError when a point has a
    /// non-finite coordinate or fails y_k < r_k on some axis.
    PointSet(std::vector<Point> points, Point reference);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    std::size_t dim() const noexcept { return reference_.size(); }

    const std::vector<Point>& points() const noexcept { return points_; }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const Point& reference() const noexcept { return reference_; }

private:
    std::vector<Point> points_;
    Point reference_;
};

/// p ≤ q componentwise with p ≠ q.
bool dominates(std::span<const double> p, std::span<const double> q);

/// p ≤ q componentwise (equality allowed).
bool weakly_dominates(std::span<const double> p, std::span<const double> q) noexcept;

/// Drops coordinate `axis` (0-based).
Point project(std::span<const double> p, std::size_t axis);

/// Componentwise max(a, b): raises a to at least b.
Point clip(std::span<const double> a, std::span<const double> b);

std::vector<double> concat(const std::vector<Point>& points);
std::vector<double> concat(const PointSet& set);
std::vector<Point> deconcat(std::span<const double> values, std::size_t dim);

GeneralPositionReport check_general_position(const std::vector<Point>& points);
GeneralPositionReport check_general_position(const PointSet& set);

/// Throws GeneralPositionError when the report is not ok.
void require_general_position(const PointSet& set);

/// Indices of points not dominated by any other point, in input order. Of several
/// identical points only the first survives.
std::vector<std::size_t> pareto_filter(const std::vector<Point>& points);
std::vector<std::size_t> pareto_filter(const PointSet& set);

} // namespace hvh
