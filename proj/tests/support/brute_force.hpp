#pragma once

#include <optional>
#include <vector>

#include "qprefine/model.hpp"
#include "qprefine/oracle.hpp"

namespace qprefine::testing {

struct LinearSolution {
  RatVector values;
  /// Columns without a pivot; their values were set to zero.
  std::vector<std::size_t> free_columns;
};

/// Reduced row echelon solve of M v = rhs, independent of the library LU.
/// nullopt when the system is inconsistent.
std::optional<LinearSolution> gauss_jordan(DenseRatMatrix m, RatVector rhs);

struct Enumerated {
  bool found = false;
  RatVector x;
  RatVector y;
  Rational objective;
  Basis basis;
  /// The face system of `basis` was nonsingular.
  bool regular = false;
};

/// Global minimum over all faces: every assignment of each variable to
/// free, lower or upper, solved exactly and filtered for feasibility.
/// Among minimisers a face with a nonsingular KKT system is preferred.
Enumerated enumerate_active_sets(const StandardQP& p);

/// The same enumeration in long double arithmetic with partial pivoting.
struct EnumeratedFloat {
  bool found = false;
  long double objective = 0;
};
EnumeratedFloat enumerate_active_sets_ld(const StandardQP& p);

}  // namespace qprefine::testing
