#include "hvh/hypervolume.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace hvh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double hv_1d(std::span<const Point> points, std::span<const double> ref) {
    double lo = ref[0];
    for (const auto& p : points) lo = std::min(lo, p[0]);
    return ref[0] - lo;
}

double hv_2d(std::span<const Point> points, std::span<const double> ref) {
    std::vector<const Point*> order;
    order.reserve(points.size());
    for (const auto& p : points) order.push_back(&p);
    std::sort(order.begin(), order.end(), [](const Point* a, const Point* b) {
        return (*a)[0] < (*b)[0] || ((*a)[0] == (*b)[0] && (*a)[1] < (*b)[1]);
    });
    double area = 0.0;
    double ceiling = ref[1];
    for (const Point* p : order) {
        if ((*p)[1] < ceiling) {
            area += (ref[0] - (*p)[0]) * (ceiling - (*p)[1]);
            ceiling = (*p)[1];
        }
    }
    return area;
}

/// Staircase of mutually non-dominated 2-D points keyed by x, bracketed by sentinels
/// (-inf, ref_y) and (ref_x, -inf). Tracks the dominated area incrementally.
class Staircase {
public:
    Staircase(double ref_x, double ref_y) {
        front_.emplace(-kInf, ref_y);
        front_.emplace(ref_x, -kInf);
    }

    double area() const noexcept { return area_; }

    void insert(double x, double y) {
        auto left = std::prev(front_.upper_bound(x));
        if (left->second <= y) return; // weakly dominated
        auto first = front_.lower_bound(x);
        auto last = first;
        while (last->second >= y) ++last;

        // uncovered part of [x, ref_x] x [y, ref_y], strip by strip
        double strip_start = x;
        double strip_top = std::prev(first)->second;
        double added = 0.0;
        for (auto it = first; it != last; ++it) {
            added += (it->first - strip_start) * (strip_top - y);
            strip_start = it->first;
            strip_top = it->second;
        }
        added += (last->first - strip_start) * (strip_top - y);
        area_ += added;

        front_.erase(first, last);
        front_.emplace(x, y);
    }

private:
    double area_ = 0.0;
    std::map<double, double> front_;
};

double hv_3d(std::span<const Point> points, std::span<const double> ref) {
    std::vector<const Point*> order;
    order.reserve(points.size());
    for (const auto& p : points) order.push_back(&p);
    std::stable_sort(order.begin(), order.end(), [](const Point* a, const Point* b) { return (*a)[2] < (*b)[2]; });
    Staircase front(ref[0], ref[1]);
    double volume = 0.0;
    for (std::size_t t = 0; t < order.size(); ++t) {
        front.insert((*order[t])[0], (*order[t])[1]);
        const double next = t + 1 < order.size() ? (*order[t + 1])[2] : ref[2];
        volume += front.area() * (next - (*order[t])[2]);
    }
    return volume;
}

double hv_sliced(std::span<const Point> points, std::span<const double> ref) {
    const std::size_t m = ref.size();
    const std::size_t axis = m - 1;
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return points[a][axis] < points[b][axis]; });

    const std::span<const double> sub_ref = ref.first(axis);
    std::vector<Point> slab_front;
    double volume = 0.0;
    for (std::size_t t = 0; t < order.size(); ++t) {
        Point p(points[order[t]].begin(), points[order[t]].begin() + static_cast<std::ptrdiff_t>(axis));
        const bool covered = std::any_of(slab_front.begin(), slab_front.end(),
                                         [&](const Point& q) { return weakly_dominates(q, p); });
        if (!covered) {
            std::erase_if(slab_front, [&](const Point& q) { return weakly_dominates(p, q); });
            slab_front.push_back(std::move(p));
        }
        const double next = t + 1 < order.size() ? points[order[t + 1]][axis] : ref[axis];
        const double thickness = next - points[order[t]][axis];
        if (thickness > 0.0) volume += thickness * hv_value(slab_front, sub_ref);
    }
    return volume;
}

} // namespace

double hv_value(std::span<const Point> points, std::span<const double> reference) {
    if (points.empty()) return 0.0;
    switch (reference.size()) {
    case 0:
        return 1.0;
    case 1:
        return hv_1d(points, reference);
    case 2:
        return hv_2d(points, reference);
    case 3:
        return hv_3d(points, reference);
    default:
        return hv_sliced(points, reference);
    }
}

HvResult hv(const PointSet& set) {
    HvResult result;
    result.value = hv_value(set.points(), set.reference());
    result.dominated_count = set.size() - pareto_filter(set).size();
    return result;
}

double hvc(std::span<const double> y, std::span<const Point> others, std::span<const double> reference) {
    if (y.size() != reference.size()) throw DimensionError("hvc: point and reference dimensions differ");
    for (const auto& q : others) {
        if (q.size() != y.size()) throw DimensionError("hvc: point dimensions differ");
        if (weakly_dominates(q, y)) return 0.0;
    }
    double box = 1.0;
    for (std::size_t k = 0; k < y.size(); ++k) box *= reference[k] - y[k];
    if (others.empty()) return box;
    std::vector<Point> clipped;
    clipped.reserve(others.size());
    for (const auto& q : others) clipped.push_back(clip(q, y));
    return box - hv_value(clipped, reference);
}

} // namespace hvh
