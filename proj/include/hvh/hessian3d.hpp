#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "hvh/core.hpp"
#include "hvh/sparse.hpp"

namespace hvh {

/// A member of the sweep front, projected onto the (l, w) plane. Sentinels carry no
/// point index.
struct FrontMember {
    double l;
    double w;
    std::optional<std::size_t> index;

    bool is_sentinel() const noexcept { return !index.has_value(); }
};

/// Outcome of inserting a point into the front: its nearest lower neighbour in l, the
/// run of members it dominates (ascending l), and its nearest lower neighbour in w.
struct FrontInsertion {
    FrontMember lower_l;
    std::vector<FrontMember> dominated;
    FrontMember lower_w;
};

/// Mutually non-dominated 2-D points ordered by l (and hence descending in w), always
/// bracketed by the sentinels (-inf, ref_w) and (ref_l, -inf).
class SweepFront {
public:
    SweepFront(double ref_l, double ref_w);

    /// True when some member weakly dominates (l, w).
    bool covers(double l, double w) const;

    /// Removes the members dominated by (l, w) and inserts it. Throws hvh::Error when
    /// the point is already covered or shares its l-coordinate with a member.
    FrontInsertion insert(double l, double w, std::size_t index);

    /// Number of non-sentinel members.
    std::size_t size() const noexcept { return members_.size() - 2; }

    /// All members including sentinels, ascending in l.
    std::vector<FrontMember> members() const;

private:
    struct Slot {
        double w;
        std::optional<std::size_t> index;
    };
    static FrontMember as_member(const std::map<double, Slot>::value_type& entry);

    std::map<double, Slot> members_;
};

/// Per-sweep counters, in sweep order (h = 2, 1, 0 with 0-based axes).
struct SweepStats {
    /// Σ_t N_t: front members removed because a later point dominated them in (l, w).
    std::array<std::size_t, 3> purged{};
    /// Non-sentinel front size after the last point.
    std::array<std::size_t, 3> final_front{};
    /// Points that entered the sweep (the non-dominated ones).
    std::array<std::size_t, 3> inserted{};
};

/// All non-zero entries of ∂²HV/∂Y∂Yᵀ for a 3-D point set by three dimension sweeps,
/// O(n log n). Row/column i·3 + k addresses coordinate k of point i. Dominated points
/// have zero rows. Throws DimensionError unless m == 3 and GeneralPositionError on ties.
SparseSymMatrix hessian_3d_sweep(const PointSet& set, SweepStats* stats = nullptr);

} // namespace hvh
