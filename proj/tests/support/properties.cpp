#include "properties.hpp"

#include "qprefine/refine.hpp"

namespace qprefine::testing {

namespace {

Rational pick_factor(Rng& rng) {
  switch (uniform_int(rng, 0, 4)) {
    case 0:
      return Rational::pow10(3);
    case 1:
      return Rational::pow10(6);
    case 2:
      return Rational::pow2(uniform_int(rng, 1, 40));
    case 3:
      return Rational(mpz_class(uniform_int(rng, 2, 99)), mpz_class(uniform_int(rng, 1, 7)));
    default:
      return Rational::pow10(uniform_int(rng, 1, 30));
  }
}

BoundVector scaled(const BoundVector& v, const Rational& f) {
  BoundVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) out[i] = *v[i] * f;
  }
  return out;
}

}  // namespace

EquivalenceCheck scaling_equivalence(Rng& rng, std::size_t n, std::size_t m, bool single_factor) {
  QpShape shape;
  shape.strictly_convex = uniform_int(rng, 0, 1) == 1;
  shape.finite_box = false;
  const StandardQP p = random_standard_qp(rng, n, m, shape);
  const Iterate it = random_iterate(rng, p);
  const Rational dp = pick_factor(rng);
  const Rational dd = single_factor ? dp : pick_factor(rng);
  const StandardQP refined = build_refined_qp(p, it, dp, dd);

  // The candidate sometimes sits exactly on refined bounds so that every
  // position class of the dual residual is exercised.
  Iterate hat = random_iterate(rng, refined);
  Iterate shifted{it.x, it.y};
  for (std::size_t j = 0; j < n; ++j) shifted.x[j] += hat.x[j] / dp;
  for (std::size_t i = 0; i < m; ++i) shifted.y[i] += hat.y[i] / dd;

  const Residuals r = compute_residuals(refined, hat);
  const Residuals o = compute_residuals(p, shifted);

  EquivalenceCheck c;
  RatVector b_scaled, c_scaled;
  for (const auto& v : o.b_hat) b_scaled.push_back(v * dp);
  for (const auto& v : o.c_hat) c_scaled.push_back(v * dd);
  c.primal = r.b_hat == b_scaled && r.l_hat == scaled(o.l_hat, dp) && r.u_hat == scaled(o.u_hat, dp) &&
             r.delta_p == dp * o.delta_p;
  c.dual = r.c_hat == c_scaled && r.delta_d == dd * o.delta_d;
  c.slack = r.delta_s == dp * dd * o.delta_s;
  if (!c.all()) {
    c.detail = "dp=" + dp.to_fraction_string() + " dd=" + dd.to_fraction_string() +
               " refined delta_p=" + r.delta_p.to_fraction_string() + " original delta_p=" +
               o.delta_p.to_fraction_string() + " refined delta_d=" + r.delta_d.to_fraction_string() +
               " original delta_d=" + o.delta_d.to_fraction_string();
  }
  return c;
}

}  // namespace qprefine::testing

namespace qprefine::testing {

ContractionStats check_contraction(const RefineOutcome& out, const Rational& alpha) {
  ContractionStats s;
  auto worst = [](const IterationLog& l) { return max(l.delta_p, l.delta_d); };
  if (out.log.empty()) return s;
  const Rational inv_alpha = alpha.inverse();
  auto eps_tilde = [&](double tol) { return max(inv_alpha, Rational::from_double(tol)); };
  // The initial solve has Δ = 1, so its bound is ε̃ itself.
  if (out.initial_compliant) {
    ++s.compliant;
    ++s.capped_checked;
    if (worst(out.log.front()) <= eps_tilde(out.initial_tolerance)) {
      ++s.capped_ok;
    } else {
      s.failures += "initial solve; ";
    }
  } else {
    ++s.noncompliant;
  }
  for (std::size_t k = 0; k + 1 < out.log.size(); ++k) {
    const IterationLog& row = out.log[k];
    if (!row.solved) continue;
    if (!row.compliant) {
      ++s.noncompliant;
      continue;
    }
    ++s.compliant;
    const Rational now = worst(row);
    const Rational next = worst(out.log[k + 1]);
    const Rational et = eps_tilde(row.oracle_tolerance);
    ++s.literal_checked;
    if (next <= et * now) {
      ++s.literal_ok;
    } else {
      s.failures += "k=" + std::to_string(row.k) + " ratio; ";
    }
    if (!now.is_zero() && row.delta == now.inverse()) {
      ++s.contraction_checked;
      if (next <= et * now) {
        ++s.contraction_ok;
      } else {
        s.failures += "k=" + std::to_string(row.k) + " contraction; ";
      }
    } else {
      ++s.capped_checked;
      if (next <= et / row.delta) {
        ++s.capped_ok;
      } else {
        s.failures += "k=" + std::to_string(row.k) + " capped; ";
      }
    }
  }
  return s;
}

StandardQP calibration_qp() {
  return make_standard_qp(RatMatrix::from_dense({{Rational(2), Rational(1), Rational()},
                                                 {Rational(1), Rational(2), Rational()},
                                                 {Rational(), Rational(), Rational(1)}},
                                                true),
                          RatMatrix::from_dense({{Rational(1), Rational(1), Rational(1)}}),
                          {Rational(1), Rational(-1), Rational(mpz_class(1), mpz_class(3))},
                          {Rational(mpz_class(1), mpz_class(7))}, BoundVector(3), BoundVector(3));
}

}  // namespace qprefine::testing
