#pragma once

#include <cstddef>
#include <vector>

#include "qprefine/rat_matrix.hpp"

namespace qprefine {

/// Exact factorization P·M = L·U with L unit lower triangular.
///
/// Row i of P·M is row permutation[i] of M.
struct RatLU {
  std::vector<std::size_t> permutation;
  RatMatrix lower;
  RatMatrix upper;
  bool rank_ok = true;

  std::size_t size() const { return permutation.size(); }
};

/// Never throws on singular input; rank_ok reports it. Throws
/// std::invalid_argument if m is not square.
RatLU lu_factor(const RatMatrix& m);
RatLU lu_factor(DenseRatMatrix m);

/// Solves M·x = rhs. Throws std::invalid_argument on a length mismatch and
/// std::domain_error when the factorization is singular.
RatVector lu_solve(const RatLU& f, const RatVector& rhs);

}  // namespace qprefine
