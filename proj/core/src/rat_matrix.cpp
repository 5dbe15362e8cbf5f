#include "qprefine/rat_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qprefine {

RatMatrix RatMatrix::from_entries(std::size_t rows, std::size_t cols, std::vector<RatEntry> entries,
                                  bool symmetric) {
  RatMatrix m(rows, cols);
  m.symmetric_ = symmetric;
  std::erase_if(entries, [](const RatEntry& e) { return e.value.is_zero(); });
  std::sort(entries.begin(), entries.end(), [](const RatEntry& a, const RatEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (e.row >= rows || e.col >= cols) {
      throw std::invalid_argument("RatMatrix: entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                                  ") out of range");
    }
    if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
      throw std::invalid_argument("RatMatrix: duplicate entry (" + std::to_string(e.row) + "," +
                                  std::to_string(e.col) + ")");
    }
    ++m.row_start_[e.row + 1];
  }
  for (std::size_t i = 0; i < rows; ++i) m.row_start_[i + 1] += m.row_start_[i];
  m.entries_ = std::move(entries);
  if (symmetric) {
    if (rows != cols) throw std::invalid_argument("RatMatrix: symmetric matrix must be square");
    for (const auto& e : m.entries_) {
      if (e.row < e.col && m.entry(e.col, e.row) != e.value) {
        throw std::invalid_argument("RatMatrix: entries are not symmetric");
      }
      if (e.row > e.col && m.entry(e.col, e.row).is_zero()) {
        throw std::invalid_argument("RatMatrix: entries are not symmetric");
      }
    }
  }
  return m;
}

RatMatrix RatMatrix::from_dense(const DenseRatMatrix& dense, bool symmetric) {
  const std::size_t rows = dense.size();
  const std::size_t cols = rows == 0 ? 0 : dense.front().size();
  std::vector<RatEntry> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    if (dense[i].size() != cols) throw std::invalid_argument("RatMatrix: ragged dense input");
    for (std::size_t j = 0; j < cols; ++j) {
      if (!dense[i][j].is_zero()) entries.push_back({i, j, dense[i][j]});
    }
  }
  return from_entries(rows, cols, std::move(entries), symmetric);
}

RatMatrix RatMatrix::identity(std::size_t n) {
  std::vector<RatEntry> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, Rational(1)});
  return from_entries(n, n, std::move(entries), true);
}

Rational RatMatrix::entry(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("RatMatrix::entry");
  const auto first = entries_.begin() + static_cast<std::ptrdiff_t>(row_start_[i]);
  const auto last = entries_.begin() + static_cast<std::ptrdiff_t>(row_start_[i + 1]);
  const auto it = std::lower_bound(first, last, j, [](const RatEntry& e, std::size_t col) { return e.col < col; });
  return (it != last && it->col == j) ? it->value : Rational();
}

RatVector RatMatrix::multiply(const RatVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("RatMatrix::multiply: dimension mismatch");
  RatVector out(rows_);
  for (const auto& e : entries_) {
    if (!x[e.col].is_zero()) out[e.row] += e.value * x[e.col];
  }
  return out;
}

RatVector RatMatrix::transpose_multiply(const RatVector& y) const {
  if (y.size() != rows_) throw std::invalid_argument("RatMatrix::transpose_multiply: dimension mismatch");
  RatVector out(cols_);
  for (const auto& e : entries_) {
    if (!y[e.row].is_zero()) out[e.col] += e.value * y[e.row];
  }
  return out;
}

RatMatrix RatMatrix::multiply(const RatMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("RatMatrix::multiply: dimension mismatch");
  std::vector<RatEntry> out;
  for (std::size_t i = 0; i < rows_; ++i) {
    RatVector acc(rhs.cols_);
    std::vector<bool> touched(rhs.cols_, false);
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k) {
      const auto& a = entries_[k];
      for (std::size_t t = rhs.row_start_[a.col]; t < rhs.row_start_[a.col + 1]; ++t) {
        const auto& b = rhs.entries_[t];
        acc[b.col] += a.value * b.value;
        touched[b.col] = true;
      }
    }
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      if (touched[j] && !acc[j].is_zero()) out.push_back({i, j, acc[j]});
    }
  }
  return from_entries(rows_, rhs.cols_, std::move(out));
}

RatMatrix RatMatrix::transpose() const {
  std::vector<RatEntry> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back({e.col, e.row, e.value});
  return from_entries(cols_, rows_, std::move(out), symmetric_);
}

DenseRatMatrix RatMatrix::to_dense() const {
  DenseRatMatrix d(rows_, RatVector(cols_));
  for (const auto& e : entries_) d[e.row][e.col] = e.value;
  return d;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t k = 0; k < a.entries_.size(); ++k) {
    const auto& x = a.entries_[k];
    const auto& y = b.entries_[k];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

}  // namespace qprefine
