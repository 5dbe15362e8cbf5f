#pragma once

#include "qprefine/oracle.hpp"
#include "qprefine/residuals.hpp"

namespace qprefine {

enum class BasisSolveStatus { optimal, not_optimal, singular };

struct BasisSolveResult {
  BasisSolveStatus status = BasisSolveStatus::singular;
  Iterate iterate;
  /// Qx + c - Aᵀy at the computed point.
  RatVector z;
};

/// Fixes nonbasic variables at their bounds and solves the saddle system of
/// the basic variables exactly. The point is returned as optimal only if it
/// passes the exact KKT check. Throws std::invalid_argument when the basis
/// has the wrong size.
BasisSolveResult rational_basis_solve(const StandardQP& p, const Basis& basis);

}  // namespace qprefine
