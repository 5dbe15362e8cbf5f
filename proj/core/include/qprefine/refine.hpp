#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "qprefine/basis_solve.hpp"
#include "qprefine/oracle.hpp"
#include "qprefine/residuals.hpp"

namespace qprefine {

enum class TerminationStatus { exact, tolerance_reached, refinement_limit, oracle_failure };

std::string_view to_string(TerminationStatus s);

struct RefineParams {
  std::string preset = "custom";
  Rational eps_p = Rational::pow10(-100);
  Rational eps_d = Rational::pow10(-100);
  Rational eps_s = Rational::pow10(-200);
  Rational alpha = Rational::pow10(12);
  std::size_t k_max = 300;
  std::size_t l_max = 10;
  std::size_t ratfac_minstalls = 2;
  bool rational_factorization = true;
  /// Warm start each oracle call after the first from the previous basis.
  bool warm_start = true;
  /// Try fast settings first and fall back to reliable ones.
  bool resolve = true;
  /// Recorded for fidelity with the parameter table; the oracle is dense.
  bool sparse = false;
  OracleSettings fast = OracleSettings::fast();
  OracleSettings reliable = OracleSettings::reliable();

  /// Throws std::invalid_argument unless alpha > 1 and tolerances ≥ 0.
  void validate() const;
};

/// One pass of the main loop. Residuals are those of the iterate entering
/// the pass; the remaining fields describe the refined solve made in it.
struct IterationLog {
  std::size_t k = 0;
  Rational delta_p;
  Rational delta_d;
  Rational delta_s;
  bool ratfac = false;
  bool solved = false;
  Rational delta;
  OracleStatus oracle_status = OracleStatus::optimal;
  bool basis_changed = false;
  std::size_t backsteps = 0;
  std::size_t resolves = 0;
  std::size_t oracle_iterations = 0;
  /// Oracle tolerance the accepted solution was computed with.
  double oracle_tolerance = 0.0;
  /// The accepted solution met its tolerance in the exact refined problem.
  bool compliant = false;
  /// Complementarity of the accepted solution in the refined problem.
  Rational sigma;
};

struct RefineOutcome {
  Iterate iterate;
  RatVector z;
  Residuals residuals;
  TerminationStatus status = TerminationStatus::oracle_failure;
  std::vector<IterationLog> log;
  /// Refined solves; the initial solve is not counted.
  std::size_t refinements = 0;
  std::size_t main_loop_iterations = 0;
  std::size_t backsteps = 0;
  std::size_t resolves = 0;
  std::size_t oracle_iterations = 0;
  std::size_t rational_solves = 0;
  OracleStatus initial_status = OracleStatus::optimal;
  bool initial_compliant = false;
  double initial_tolerance = 0.0;
  Rational measured_sigma;
  double wall_seconds = 0.0;
  double rational_seconds = 0.0;
};

/// min{1/δ_P, 1/δ_D, α·Δ_prev} with 1/0 read as +∞.
Rational choose_scaling(const Residuals& r, const Rational& delta_prev, const Rational& alpha);

/// The refined problem with one scaling factor. Q and A are shared with p.
StandardQP build_refined_qp(const StandardQP& p, const Iterate& it, const Rational& delta);

/// The refined problem with separate primal and dual factors; Q is scaled by
/// delta_d / delta_p.
StandardQP build_refined_qp(const StandardQP& p, const Iterate& it, const Rational& delta_p,
                            const Rational& delta_d);

/// it + (x̄, ȳ)/Δ with exact conversion of the doubles, then nonbasic
/// variables are set to their bounds when `snap` is set.
Iterate apply_correction(const Iterate& it, const OracleResult& sol, const Rational& delta, const StandardQP& p,
                         bool snap = true);

/// Number of iterations after which the tolerances are guaranteed under an
/// oracle with accuracy eps_tilde and complementarity sigma. sigma = 0
/// drops the complementarity term. Throws std::invalid_argument unless
/// 0 < eps_tilde < 1.
std::size_t compute_iteration_bound(const Rational& eps_tilde, const Rational& eps_p, const Rational& eps_d,
                                    const Rational& eps_s, const Rational& sigma);

RefineOutcome refine(const StandardQP& p, const RefineParams& params, QpOracle& oracle);

}  // namespace qprefine
