#pragma once

#include <random>

#include "qprefine/model.hpp"

namespace qprefine::testing {

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi);

/// p/q with |p| ≤ num_max and 1 ≤ q ≤ den_max.
Rational random_rational(Rng& rng, int num_max, int den_max);

struct QpShape {
  /// Q = LLᵀ + I instead of LLᵀ.
  bool strictly_convex = true;
  /// Every variable gets finite lower and upper bounds.
  bool finite_box = true;
  /// Data with denominators that have no exact double.
  bool fractional = true;
};

/// Feasible by construction: b = A x0 for a point x0 inside the bounds.
StandardQP random_standard_qp(Rng& rng, std::size_t n, std::size_t m, QpShape shape = {});

Iterate random_iterate(Rng& rng, const StandardQP& p);

/// General form instance exercising every row and bound kind, with
/// fractional and decimal coefficients.
GeneralQP random_general_qp(Rng& rng, std::size_t n, std::size_t m);

/// min ½(x₁² + x₂²) + x₁ + (1 + 10⁻⁶)x₂ s.t. x₁ + x₂ = 10⁻⁶, x ≥ 0.
StandardQP example1();

}  // namespace qprefine::testing
