#include "qprefine/refine.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "qprefine/timing.hpp"

namespace qprefine {

std::string_view to_string(TerminationStatus s) {
  switch (s) {
    case TerminationStatus::exact:
      return "exact";
    case TerminationStatus::tolerance_reached:
      return "tolerance_reached";
    case TerminationStatus::refinement_limit:
      return "refinement_limit";
    case TerminationStatus::oracle_failure:
      return "oracle_failure";
  }
  return "unknown";
}

void RefineParams::validate() const {
  if (alpha <= Rational(1)) throw std::invalid_argument("alpha must exceed 1");
  if (eps_p.sign() < 0 || eps_d.sign() < 0 || eps_s.sign() < 0) {
    throw std::invalid_argument("tolerances must be non-negative");
  }
}

Rational choose_scaling(const Residuals& r, const Rational& delta_prev, const Rational& alpha) {
  RationalScope scope;
  Rational delta = alpha * delta_prev;
  if (!r.delta_p.is_zero()) delta = min(delta, r.delta_p.inverse());
  if (!r.delta_d.is_zero()) delta = min(delta, r.delta_d.inverse());
  return delta;
}

StandardQP build_refined_qp(const StandardQP& p, const Iterate& it, const Rational& delta) {
  return build_refined_qp(p, it, delta, delta);
}

StandardQP build_refined_qp(const StandardQP& p, const Iterate& it, const Rational& delta_p,
                            const Rational& delta_d) {
  RationalScope scope;
  if (delta_p.sign() <= 0 || delta_d.sign() <= 0) throw std::invalid_argument("scaling factors must be positive");
  const Residuals r = compute_residuals(p, it);
  StandardQP out;
  out.name = p.name;
  out.a = p.a;
  if (delta_p == delta_d) {
    out.q = p.q;
  } else {
    const Rational ratio = delta_d / delta_p;
    std::vector<RatEntry> entries = p.q->entries();
    for (auto& e : entries) e.value *= ratio;
    out.q = std::make_shared<const RatMatrix>(RatMatrix::from_entries(p.n(), p.n(), std::move(entries), true));
  }
  out.c.reserve(p.n());
  for (const auto& v : r.c_hat) out.c.push_back(delta_d * v);
  out.b.reserve(p.m());
  for (const auto& v : r.b_hat) out.b.push_back(delta_p * v);
  out.lower.resize(p.n());
  out.upper.resize(p.n());
  for (std::size_t j = 0; j < p.n(); ++j) {
    if (r.l_hat[j]) out.lower[j] = delta_p * *r.l_hat[j];
    if (r.u_hat[j]) out.upper[j] = -(delta_p * *r.u_hat[j]);
  }
  out.slack_map = p.slack_map;
  out.num_original_cols = p.num_original_cols;
  out.col_names = p.col_names;
  out.row_names = p.row_names;
  return out;
}

Iterate apply_correction(const Iterate& it, const OracleResult& sol, const Rational& delta, const StandardQP& p,
                         bool snap) {
  RationalScope scope;
  if (sol.x.size() != it.x.size() || sol.y.size() != it.y.size()) {
    throw std::invalid_argument("apply_correction: dimension mismatch");
  }
  const Rational inv = delta.inverse();
  Iterate next = it;
  for (std::size_t j = 0; j < next.x.size(); ++j) {
    if (sol.x[j] != 0.0) next.x[j] += Rational::from_double(sol.x[j]) * inv;
  }
  for (std::size_t i = 0; i < next.y.size(); ++i) {
    if (sol.y[i] != 0.0) next.y[i] += Rational::from_double(sol.y[i]) * inv;
  }
  if (snap && sol.basis.size() == next.x.size()) {
    for (std::size_t j = 0; j < next.x.size(); ++j) {
      const auto s = sol.basis.status[j];
      if (s == VarStatus::at_lower && p.lower[j]) {
        next.x[j] = *p.lower[j];
      } else if (s == VarStatus::at_upper && p.upper[j]) {
        next.x[j] = *p.upper[j];
      }
    }
  }
  return next;
}

std::size_t compute_iteration_bound(const Rational& eps_tilde, const Rational& eps_p, const Rational& eps_d,
                                     const Rational& eps_s, const Rational& sigma) {
  if (eps_tilde.sign() <= 0 || eps_tilde >= Rational(1)) {
    throw std::invalid_argument("compute_iteration_bound: eps_tilde must lie in (0, 1)");
  }
  constexpr auto unbounded = std::numeric_limits<std::size_t>::max();
  const double le = log(eps_tilde);
  double k = 0.0;
  for (const Rational* e : {&eps_p, &eps_d}) {
    if (e->sign() <= 0) return unbounded;
    k = std::max(k, log(*e) / le);
  }
  if (sigma.sign() > 0) {
    if (eps_s.sign() <= 0) return unbounded;
    k = std::max(k, (log(eps_s) - log(sigma)) / (2 * le) + 1);
  }
  const double nearest = std::round(k);
  if (std::abs(k - nearest) <= 1e-9 * std::max(1.0, nearest)) k = nearest;
  return static_cast<std::size_t>(std::ceil(k));
}

namespace {

struct Attempt {
  OracleResult result;
  std::size_t resolves = 0;
  std::size_t iterations = 0;
  double tolerance = 0.0;

  bool ok() const { return result.status == OracleStatus::optimal; }
};

Attempt attempt(QpOracle& oracle, const RefineParams& params, const FloatQP& qp, const std::optional<Basis>& warm) {
  Attempt a;
  if (params.resolve) {
    a.result = oracle.solve(qp, params.fast, warm);
    a.iterations += a.result.iterations;
    a.tolerance = params.fast.termination_tolerance;
    if (a.ok()) return a;
    ++a.resolves;
  }
  a.result = oracle.solve(qp, params.reliable, warm);
  a.iterations += a.result.iterations;
  a.tolerance = params.reliable.termination_tolerance;
  return a;
}

}  // namespace

RefineOutcome refine(const StandardQP& p, const RefineParams& params, QpOracle& oracle) {
  params.validate();
  p.validate();
  const auto start = std::chrono::steady_clock::now();
  const double rational_start = RationalScope::seconds();

  RefineOutcome out;
  Iterate it{RatVector(p.n()), RatVector(p.m())};
  FloatQP last_float = round_to_float(p);
  const Attempt first = attempt(oracle, params, last_float, std::nullopt);
  out.initial_status = first.result.status;
  out.initial_tolerance = first.tolerance;
  out.resolves += first.resolves;
  out.oracle_iterations += first.iterations;

  auto finish = [&](RefineOutcome& o) -> RefineOutcome& {
    o.iterate = it;
    o.z = o.residuals.c_hat;
    o.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.rational_seconds = RationalScope::seconds() - rational_start;
    return o;
  };

  if (!first.ok()) {
    out.status = TerminationStatus::oracle_failure;
    out.residuals = compute_residuals(p, it);
    return finish(out);
  }
  it = apply_correction(it, first.result, Rational(1), p);

  Basis basis = first.result.basis;
  std::size_t stall = 0;
  bool factorized = false;
  Rational delta_prev(1);
  Rational pending_delta(1);
  double pending_tol = first.tolerance;
  std::ptrdiff_t pending_row = -1;

  while (true) {
    ++out.main_loop_iterations;
    Residuals r = compute_residuals(p, it);
    {
      RationalScope scope;
      const Rational sigma = pending_delta * pending_delta * r.delta_s;
      if (sigma > out.measured_sigma) out.measured_sigma = sigma;
      const Rational tol = Rational::from_double(pending_tol);
      const bool compliant = pending_delta * r.delta_p <= tol && pending_delta * r.delta_d <= tol;
      if (pending_row >= 0) {
        out.log[static_cast<std::size_t>(pending_row)].sigma = sigma;
        out.log[static_cast<std::size_t>(pending_row)].compliant = compliant;
      } else {
        out.initial_compliant = compliant;
      }
    }

    IterationLog row;
    row.k = out.main_loop_iterations;
    row.delta_p = r.delta_p;
    row.delta_d = r.delta_d;
    row.delta_s = r.delta_s;

    auto stop = [&](TerminationStatus s) {
      out.status = s;
      out.residuals = std::move(r);
      out.log.push_back(std::move(row));
    };

    if (r.all_zero()) {
      stop(TerminationStatus::exact);
      break;
    }
    if (r.delta_p <= params.eps_p && r.delta_d <= params.eps_d && r.delta_s <= params.eps_s) {
      stop(TerminationStatus::tolerance_reached);
      break;
    }
    if (out.refinements >= params.k_max) {
      stop(TerminationStatus::refinement_limit);
      break;
    }
    if (params.rational_factorization && stall >= params.ratfac_minstalls && !factorized) {
      factorized = true;
      row.ratfac = true;
      ++out.rational_solves;
      BasisSolveResult bs = rational_basis_solve(p, basis);
      if (bs.status == BasisSolveStatus::optimal) {
        it = std::move(bs.iterate);
        r = compute_residuals(p, it);
        stop(TerminationStatus::exact);
        break;
      }
    }

    Rational delta = choose_scaling(r, delta_prev, params.alpha);
    const std::optional<Basis> warm = params.warm_start ? std::optional<Basis>(basis) : std::nullopt;
    Attempt a;
    while (true) {
      const StandardQP refined = build_refined_qp(p, it, delta);
      FloatQP fq = round_to_float(refined, &last_float);
      a = attempt(oracle, params, fq, warm);
      last_float = std::move(fq);
      row.resolves += a.resolves;
      row.oracle_iterations += a.iterations;
      if (a.ok()) break;
      if (row.backsteps < params.l_max && delta / Rational(100) >= delta_prev) {
        delta /= Rational(100);
        ++row.backsteps;
        continue;
      }
      break;
    }
    row.solved = true;
    row.delta = delta;
    row.oracle_status = a.result.status;
    row.oracle_tolerance = a.tolerance;
    out.backsteps += row.backsteps;
    out.resolves += row.resolves;
    out.oracle_iterations += row.oracle_iterations;
    if (!a.ok()) {
      stop(TerminationStatus::oracle_failure);
      break;
    }

    ++out.refinements;
    row.basis_changed = a.result.basis != basis;
    if (row.basis_changed) {
      stall = 0;
      factorized = false;
    } else {
      ++stall;
    }
    basis = a.result.basis;
    it = apply_correction(it, a.result, delta, p);
    delta_prev = delta;
    pending_delta = delta;
    pending_tol = a.tolerance;
    pending_row = static_cast<std::ptrdiff_t>(out.log.size());
    out.log.push_back(std::move(row));
  }

  if (out.status == TerminationStatus::exact && !verify_kkt_exact(p, it).exact_optimal) {
    throw std::logic_error("refine: exact termination without an exact KKT certificate");
  }
  return finish(out);
}

}  // namespace qprefine
