#include "hvh/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "hvh/core.hpp"

namespace hvh {

namespace {

bool position_less(const MatrixEntry& a, const MatrixEntry& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
}

} // namespace

SparseSymMatrix SparseSymMatrix::from_entries(std::size_t dim, std::vector<MatrixEntry> entries,
                                              double abs_tol, double rel_tol) {
    for (auto& e : entries) {
        if (e.row >= dim || e.col >= dim) {
            throw DimensionError("entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                                 ") outside a " + std::to_string(dim) + "x" + std::to_string(dim) +
                                 " matrix");
        }
        if (e.row > e.col) std::swap(e.row, e.col);
    }
    std::stable_sort(entries.begin(), entries.end(), position_less);

    SparseSymMatrix out(dim);
    out.entries_.reserve(entries.size());
    for (const auto& e : entries) {
        if (!out.entries_.empty() && out.entries_.back().row == e.row && out.entries_.back().col == e.col) {
            const double kept = out.entries_.back().value;
            if (std::abs(kept - e.value) > std::max(abs_tol, rel_tol * std::abs(kept))) {
                throw Error("conflicting values " + std::to_string(kept) + " and " + std::to_string(e.value) +
                            " at (" + std::to_string(e.row) + "," + std::to_string(e.col) + ")");
            }
            continue;
        }
        out.entries_.push_back(e);
    }
    std::erase_if(out.entries_, [](const MatrixEntry& e) { return e.value == 0.0; });
    return out;
}

SparseSymMatrix SparseSymMatrix::from_dense(const Eigen::MatrixXd& dense, double drop_below) {
    if (dense.rows() != dense.cols()) throw DimensionError("dense matrix is not square");
    SparseSymMatrix out(static_cast<std::size_t>(dense.rows()));
    for (Eigen::Index r = 0; r < dense.rows(); ++r) {
        for (Eigen::Index c = r; c < dense.cols(); ++c) {
            const double v = dense(r, c);
            if (v != 0.0 && std::abs(v) > drop_below) {
                out.entries_.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), v});
            }
        }
    }
    return out;
}

std::size_t SparseSymMatrix::nonzero_count() const noexcept {
    std::size_t count = 0;
    for (const auto& e : entries_) count += e.row == e.col ? 1 : 2;
    return count;
}

std::vector<MatrixEntry> SparseSymMatrix::full_entries() const {
    std::vector<MatrixEntry> out;
    out.reserve(nonzero_count());
    for (const auto& e : entries_) {
        out.push_back(e);
        if (e.row != e.col) out.push_back({e.col, e.row, e.value});
    }
    std::sort(out.begin(), out.end(), position_less);
    return out;
}

double SparseSymMatrix::at(std::size_t row, std::size_t col) const {
    if (row >= dim_ || col >= dim_) throw DimensionError("index outside matrix");
    if (row > col) std::swap(row, col);
    const MatrixEntry key{row, col, 0.0};
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key, position_less);
    if (it != entries_.end() && it->row == row && it->col == col) return it->value;
    return 0.0;
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const {
    const auto n = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : entries_) {
        dense(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
        dense(static_cast<Eigen::Index>(e.col), static_cast<Eigen::Index>(e.row)) = e.value;
    }
    return dense;
}

} // namespace hvh
