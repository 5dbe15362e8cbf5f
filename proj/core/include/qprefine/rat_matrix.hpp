#pragma once

#include <cstddef>
#include <vector>

#include "qprefine/rational.hpp"

namespace qprefine {

struct RatEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  Rational value;
};

using DenseRatMatrix = std::vector<RatVector>;

/// Sparse rational matrix stored as row-major sorted triplets.
///
/// No explicit zeros are stored. A symmetric matrix stores both triangles.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_start_(rows + 1, 0) {}

  /// Builds from unordered triplets. Zero values are dropped. Throws
  /// std::invalid_argument on out-of-range or duplicate positions, and when
  /// `symmetric` is set but the entries are not symmetric.
  static RatMatrix from_entries(std::size_t rows, std::size_t cols, std::vector<RatEntry> entries,
                                bool symmetric = false);
  static RatMatrix from_dense(const DenseRatMatrix& dense, bool symmetric = false);
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_symmetric() const { return symmetric_; }
  bool is_square() const { return rows_ == cols_; }

  const std::vector<RatEntry>& entries() const { return entries_; }
  /// Entries of row i are entries()[row_begin(i) .. row_begin(i+1)).
  std::size_t row_begin(std::size_t i) const { return row_start_[i]; }

  Rational entry(std::size_t i, std::size_t j) const;

  RatVector multiply(const RatVector& x) const;
  RatVector transpose_multiply(const RatVector& y) const;
  RatMatrix multiply(const RatMatrix& rhs) const;
  RatMatrix transpose() const;
  DenseRatMatrix to_dense() const;

  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  bool symmetric_ = false;
  std::vector<RatEntry> entries_;
  std::vector<std::size_t> row_start_{0};
};

Rational dot(const RatVector& a, const RatVector& b);

}  // namespace qprefine
