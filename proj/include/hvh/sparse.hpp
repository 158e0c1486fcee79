#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hvh {

struct MatrixEntry {
    std::size_t row;
    std::size_t col;
    double value;

    friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Symmetric square matrix in coordinate form.
///
/// Entries are held once, canonically with row <= col and sorted by (row, col); exact
/// zeros are never stored. nonzero_count() counts the symmetric closure, i.e. an
/// off-diagonal entry counts twice.
class SparseSymMatrix {
public:
    SparseSymMatrix() = default;
    explicit SparseSymMatrix(std::size_t dim) : dim_(dim) {}

    /// Merges emissions of the same (unordered) position. Two emissions of one position
    /// must agree within max(abs_tol, rel_tol·|v|), otherwise hvh::Error is thrown; the
    /// first emission is kept.
    static SparseSymMatrix from_entries(std::size_t dim, std::vector<MatrixEntry> entries,
                                        double abs_tol = 1e-12, double rel_tol = 1e-12);

    /// Keeps |v| > drop_below entries of the upper triangle of a dense matrix.
    static SparseSymMatrix from_dense(const Eigen::MatrixXd& dense, double drop_below = 0.0);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const MatrixEntry> entries() const noexcept { return entries_; }
    std::size_t stored_count() const noexcept { return entries_.size(); }
    std::size_t nonzero_count() const noexcept;

    /// Symmetric closure, sorted by (row, col).
    std::vector<MatrixEntry> full_entries() const;

    double at(std::size_t row, std::size_t col) const;
    Eigen::MatrixXd to_dense() const;

    friend bool operator==(const SparseSymMatrix&, const SparseSymMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<MatrixEntry> entries_;
};

} // namespace hvh
