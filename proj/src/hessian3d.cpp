#include "hvh/hessian3d.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace hvh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SweepAxes {
    std::size_t l;
    std::size_t w;
    std::size_t h;
};

// Every unordered pair of distinct axes appears as (h, l) or (h, w) in some sweep.
constexpr std::array<SweepAxes, 3> kSweeps{{{0, 1, 2}, {0, 2, 1}, {2, 1, 0}}};

} // namespace

SweepFront::SweepFront(double ref_l, double ref_w) {
    members_.emplace(-kInf, Slot{ref_w, std::nullopt});
    members_.emplace(ref_l, Slot{-kInf, std::nullopt});
}

FrontMember SweepFront::as_member(const std::map<double, Slot>::value_type& entry) {
    return {entry.first, entry.second.w, entry.second.index};
}

bool SweepFront::covers(double l, double w) const {
    auto left = std::prev(members_.upper_bound(l));
    return left->second.w <= w;
}

FrontInsertion SweepFront::insert(double l, double w, std::size_t index) {
    if (covers(l, w)) throw Error("sweep front: inserted point is dominated");
    auto first = members_.lower_bound(l);
    if (first->first == l) throw Error("sweep front: duplicate l-coordinate " + std::to_string(l));
    auto last = first;
    while (last->second.w > w) ++last;
    if (last->second.w == w) throw Error("sweep front: duplicate w-coordinate " + std::to_string(w));

    FrontInsertion out{as_member(*std::prev(first)), {}, as_member(*last)};
    for (auto it = first; it != last; ++it) out.dominated.push_back(as_member(*it));
    members_.erase(first, last);
    members_.emplace(l, Slot{w, index});
    return out;
}

std::vector<FrontMember> SweepFront::members() const {
    std::vector<FrontMember> out;
    out.reserve(members_.size());
    for (const auto& entry : members_) out.push_back(as_member(entry));
    return out;
}

SparseSymMatrix hessian_3d_sweep(const PointSet& set, SweepStats* stats) {
    if (set.dim() != 3) {
        throw DimensionError("the 3-D sweep needs m = 3, got m = " + std::to_string(set.dim()));
    }
    require_general_position(set);

    const std::size_t n = set.size();
    const auto& ref = set.reference();
    std::vector<MatrixEntry> emitted;
    emitted.reserve(18 * n);
    std::vector<std::size_t> order(n);

    for (std::size_t s = 0; s < kSweeps.size(); ++s) {
        const auto [l, w, h] = kSweeps[s];
        const auto pos = [&](std::size_t point, std::size_t axis) { return point * 3 + axis; };

        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return set[a][h] < set[b][h]; });

        SweepFront front(ref[l], ref[w]);
        std::size_t purged = 0;
        std::size_t inserted = 0;
        for (std::size_t a : order) {
            const double al = set[a][l];
            const double aw = set[a][w];
            if (front.covers(al, aw)) continue; // dominated in 3-D by an earlier point

            const FrontInsertion ins = front.insert(al, aw, a);
            ++inserted;
            purged += ins.dominated.size();

            // The facet of a at height a_h is the staircase polygon spanned by a, the
            // two neighbours and the dominated run. Same-point mixed partials are its
            // outer edges (positive); every corner owned by another point contributes
            // the negated length of the edge it moves.
            const FrontMember& left = ins.lower_l;
            const FrontMember& right = ins.lower_w;
            const auto& run = ins.dominated;

            emitted.push_back({pos(a, h), pos(a, l), left.w - aw});
            emitted.push_back({pos(a, h), pos(a, w), right.l - al});

            const double first_l = run.empty() ? right.l : run.front().l;
            const double last_w = run.empty() ? left.w : run.back().w;
            if (!left.is_sentinel()) emitted.push_back({pos(a, h), pos(*left.index, w), -(first_l - al)});
            if (!right.is_sentinel()) emitted.push_back({pos(a, h), pos(*right.index, l), -(last_w - aw)});

            for (std::size_t j = 0; j < run.size(); ++j) {
                const double prev_w = j == 0 ? left.w : run[j - 1].w;
                const double next_l = j + 1 == run.size() ? right.l : run[j + 1].l;
                emitted.push_back({pos(a, h), pos(*run[j].index, l), -(prev_w - run[j].w)});
                emitted.push_back({pos(a, h), pos(*run[j].index, w), -(next_l - run[j].l)});
            }
        }
        if (stats) {
            stats->purged[s] = purged;
            stats->final_front[s] = front.size();
            stats->inserted[s] = inserted;
        }
    }
    return SparseSymMatrix::from_entries(3 * n, std::move(emitted));
}

} // namespace hvh
