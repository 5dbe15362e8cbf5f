#pragma once

#include "qprefine/model.hpp"

namespace qprefine {

struct Residuals {
  /// b - Ax
  RatVector b_hat;
  /// l - x; empty where l is infinite.
  BoundVector l_hat;
  /// x - u; empty where u is infinite.
  BoundVector u_hat;
  /// Qx + c - Aᵀy
  RatVector c_hat;
  Rational delta_p;
  Rational delta_d;
  Rational delta_s;

  bool all_zero() const { return delta_p.is_zero() && delta_d.is_zero() && delta_s.is_zero(); }
};

/// Exact primal, dual and complementarity violations of (x, y).
///
/// Dual violation of variable i depends on where x_i sits: at or below its
/// lower bound only the sign -ĉ_i counts, at or above its upper bound only
/// ĉ_i, on both (a fixed variable) nothing, and strictly inside |ĉ_i|.
/// Complementarity is |Σ (x-l)·ĉ⁺ + Σ (u-x)·(-ĉ)⁺| over finite bounds.
/// Throws std::invalid_argument on a dimension mismatch.
Residuals compute_residuals(const StandardQP& p, const Iterate& it);

struct KktCheck {
  Residuals residuals;
  bool exact_optimal = false;
};

KktCheck verify_kkt_exact(const StandardQP& p, const Iterate& it);

}  // namespace qprefine
