#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qprefine/rat_matrix.hpp"

namespace qprefine {

/// A bound in Q ∪ {±∞}; std::nullopt is the infinite side.
using Bound = std::optional<Rational>;
using BoundVector = std::vector<Bound>;

/// min ½xᵀQx + cᵀx + constant  s.t.  row_lower ≤ Ax ≤ row_upper,
/// col_lower ≤ x ≤ col_upper.
struct GeneralQP {
  std::string name;
  std::string objective_name = "OBJ";
  std::vector<std::string> col_names;
  std::vector<std::string> row_names;
  RatMatrix q;
  RatVector c;
  Rational objective_constant;
  RatMatrix a;
  BoundVector row_lower;
  BoundVector row_upper;
  BoundVector col_lower;
  BoundVector col_upper;

  std::size_t num_cols() const { return c.size(); }
  std::size_t num_rows() const { return row_lower.size(); }

  /// Throws std::invalid_argument on inconsistent dimensions, an
  /// asymmetric Q, or a lower bound above its upper bound.
  void validate() const;
};

/// Slack column `column` was added for general row `row`.
struct SlackLink {
  std::size_t column = 0;
  std::size_t row = 0;
};

/// min ½xᵀQx + cᵀx + constant  s.t.  Ax = b,  lower ≤ x ≤ upper.
struct StandardQP {
  std::string name;
  std::shared_ptr<const RatMatrix> q;
  std::shared_ptr<const RatMatrix> a;
  RatVector c;
  RatVector b;
  BoundVector lower;
  BoundVector upper;
  Rational objective_constant;
  std::vector<SlackLink> slack_map;
  std::size_t num_original_cols = 0;
  std::vector<std::string> col_names;
  std::vector<std::string> row_names;

  std::size_t n() const { return c.size(); }
  std::size_t m() const { return b.size(); }

  void validate() const;
};

/// Builds a StandardQP with generated names and no slacks.
StandardQP make_standard_qp(RatMatrix q, RatMatrix a, RatVector c, RatVector b, BoundVector lower,
                            BoundVector upper, Rational objective_constant = Rational());

struct Iterate {
  RatVector x;
  RatVector y;
};

StandardQP to_standard_form(const GeneralQP& g);

struct GeneralSolution {
  RatVector x;
  RatVector row_duals;
  Rational objective;
};

/// Drops slack components. Row duals equal y; for rows with a slack this is
/// also the slack's reduced cost.
GeneralSolution recover_solution(const StandardQP& p, const Iterate& it);

/// Extends a general-form point with slack values s = aᵀx.
Iterate lift_to_standard(const StandardQP& p, const RatVector& x, const RatVector& row_duals);

/// Row-major dense double matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
};

struct FloatQP {
  std::shared_ptr<const DenseMatrix> q;
  std::shared_ptr<const DenseMatrix> a;
  std::vector<double> c;
  std::vector<double> b;
  /// -inf / +inf for infinite bounds.
  std::vector<double> lower;
  std::vector<double> upper;
  /// Number of entries clamped to ±max double.
  std::size_t clamped = 0;
  /// Rational matrices q and a were rounded from.
  std::shared_ptr<const RatMatrix> q_source;
  std::shared_ptr<const RatMatrix> a_source;

  std::size_t n() const { return c.size(); }
  std::size_t m() const { return b.size(); }
};

/// Nearest-double rounding of every entry. When `reuse` was rounded from a
/// problem sharing the same Q and A objects, its matrices are shared.
FloatQP round_to_float(const StandardQP& p, const FloatQP* reuse = nullptr);

/// ½xᵀQx + cᵀx + constant, exactly.
Rational objective_exact(const StandardQP& p, const RatVector& x);
Rational objective_exact(const GeneralQP& g, const RatVector& x);

}  // namespace qprefine
