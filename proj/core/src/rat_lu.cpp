#include "qprefine/rat_lu.hpp"

#include <numeric>
#include <stdexcept>

#include "qprefine/timing.hpp"

namespace qprefine {

RatLU lu_factor(const RatMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("lu_factor: matrix is not square");
  return lu_factor(m.to_dense());
}

RatLU lu_factor(DenseRatMatrix a) {
  RationalScope scope;
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("lu_factor: matrix is not square");
  }
  RatLU f;
  f.permutation.resize(n);
  std::iota(f.permutation.begin(), f.permutation.end(), std::size_t{0});
  DenseRatMatrix l(n, RatVector(n));

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    std::size_t best_bits = 0;
    for (std::size_t r = k; r < n; ++r) {
      if (a[r][k].is_zero()) continue;
      const std::size_t bits = a[r][k].bit_size();
      if (pivot == n || bits < best_bits) {
        pivot = r;
        best_bits = bits;
      }
    }
    if (pivot == n) {
      f.rank_ok = false;
      continue;
    }
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      std::swap(l[pivot], l[k]);
      std::swap(f.permutation[pivot], f.permutation[k]);
    }
    const Rational inv = a[k][k].inverse();
    std::vector<std::size_t> pivot_cols;
    for (std::size_t j = k + 1; j < n; ++j) {
      if (!a[k][j].is_zero()) pivot_cols.push_back(j);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a[r][k].is_zero()) continue;
      const Rational factor = a[r][k] * inv;
      l[r][k] = factor;
      a[r][k] = Rational();
      for (const std::size_t j : pivot_cols) a[r][j] -= factor * a[k][j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) l[i][i] = Rational(1);
  f.lower = RatMatrix::from_dense(l);
  f.upper = RatMatrix::from_dense(a);
  return f;
}

RatVector lu_solve(const RatLU& f, const RatVector& rhs) {
  RationalScope scope;
  const std::size_t n = f.size();
  if (rhs.size() != n) throw std::invalid_argument("lu_solve: dimension mismatch");
  if (!f.rank_ok) throw std::domain_error("lu_solve: singular factorization");

  RatVector z(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = rhs[f.permutation[i]];
    for (std::size_t k = f.lower.row_begin(i); k < f.lower.row_begin(i + 1); ++k) {
      const auto& e = f.lower.entries()[k];
      if (e.col < i) s -= e.value * z[e.col];
    }
    z[i] = std::move(s);
  }
  RatVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational s = z[ii];
    Rational diag;
    for (std::size_t k = f.upper.row_begin(ii); k < f.upper.row_begin(ii + 1); ++k) {
      const auto& e = f.upper.entries()[k];
      if (e.col == ii) {
        diag = e.value;
      } else if (e.col > ii) {
        s -= e.value * x[e.col];
      }
    }
    x[ii] = s / diag;
  }
  return x;
}

}  // namespace qprefine
