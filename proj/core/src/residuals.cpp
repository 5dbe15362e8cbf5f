#include "qprefine/residuals.hpp"

#include <stdexcept>

#include "qprefine/timing.hpp"

namespace qprefine {

Residuals compute_residuals(const StandardQP& p, const Iterate& it) {
  RationalScope scope;
  const std::size_t n = p.n();
  if (it.x.size() != n || it.y.size() != p.m()) throw std::invalid_argument("compute_residuals: dimension mismatch");

  Residuals r;
  const RatVector ax = p.a->multiply(it.x);
  r.b_hat.resize(p.m());
  for (std::size_t i = 0; i < p.m(); ++i) {
    r.b_hat[i] = p.b[i] - ax[i];
    const Rational mag = r.b_hat[i].abs();
    if (mag > r.delta_p) r.delta_p = mag;
  }

  r.c_hat = p.q->multiply(it.x);
  const RatVector aty = p.a->transpose_multiply(it.y);
  for (std::size_t j = 0; j < n; ++j) {
    r.c_hat[j] += p.c[j];
    r.c_hat[j] -= aty[j];
  }

  r.l_hat.resize(n);
  r.u_hat.resize(n);
  Rational slack;
  for (std::size_t j = 0; j < n; ++j) {
    const Rational& x = it.x[j];
    const Rational& c = r.c_hat[j];
    bool at_lower = false;
    bool at_upper = false;
    if (p.lower[j]) {
      r.l_hat[j] = *p.lower[j] - x;
      if (*r.l_hat[j] > r.delta_p) r.delta_p = *r.l_hat[j];
      at_lower = r.l_hat[j]->sign() >= 0;
      if (c.sign() > 0) slack -= *r.l_hat[j] * c;
    }
    if (p.upper[j]) {
      r.u_hat[j] = x - *p.upper[j];
      if (*r.u_hat[j] > r.delta_p) r.delta_p = *r.u_hat[j];
      at_upper = r.u_hat[j]->sign() >= 0;
      if (c.sign() < 0) slack += *r.u_hat[j] * c;
    }
    Rational viol;
    if (at_lower && at_upper) {
      continue;
    } else if (at_lower) {
      if (c.sign() < 0) viol = -c;
    } else if (at_upper) {
      if (c.sign() > 0) viol = c;
    } else {
      viol = c.abs();
    }
    if (viol > r.delta_d) r.delta_d = viol;
  }
  r.delta_s = slack.abs();
  return r;
}

KktCheck verify_kkt_exact(const StandardQP& p, const Iterate& it) {
  KktCheck k;
  k.residuals = compute_residuals(p, it);
  k.exact_optimal = k.residuals.all_zero();
  return k;
}

}  // namespace qprefine
