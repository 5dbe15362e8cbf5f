#include <cfloat>
#include <cmath>
#include <functional>

#include "brute_force.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "qprefine/basis_solve.hpp"
#include "qprefine/model.hpp"
#include "qprefine/residuals.hpp"

using namespace qprefine;
using namespace qprefine::testing;

namespace {

Rational frac(long p, long q) { return Rational(mpz_class(p), mpz_class(q)); }

GeneralQP example1_general() {
  const StandardQP p = example1();
  GeneralQP g;
  g.name = "EX1";
  g.col_names = {"x1", "x2"};
  g.row_names = {"r1"};
  g.q = *p.q;
  g.c = p.c;
  g.a = *p.a;
  g.row_lower = {p.b[0]};
  g.row_upper = {p.b[0]};
  g.col_lower = p.lower;
  g.col_upper = p.upper;
  return g;
}

// KKT of the general form checked directly on rows and columns.
bool general_kkt(const GeneralQP& g, const RatVector& x, const RatVector& y) {
  const RatVector ax = g.a.multiply(x);
  for (std::size_t i = 0; i < g.num_rows(); ++i) {
    const bool at_lo = g.row_lower[i] && ax[i] == *g.row_lower[i];
    const bool at_up = g.row_upper[i] && ax[i] == *g.row_upper[i];
    if (g.row_lower[i] && ax[i] < *g.row_lower[i]) return false;
    if (g.row_upper[i] && ax[i] > *g.row_upper[i]) return false;
    if (at_lo && at_up) continue;
    if (at_lo ? y[i].sign() < 0 : at_up ? y[i].sign() > 0 : !y[i].is_zero()) return false;
  }
  RatVector z = g.q.multiply(x);
  const RatVector aty = g.a.transpose_multiply(y);
  for (std::size_t j = 0; j < g.num_cols(); ++j) {
    z[j] += g.c[j] - aty[j];
    const bool at_lo = g.col_lower[j] && x[j] == *g.col_lower[j];
    const bool at_up = g.col_upper[j] && x[j] == *g.col_upper[j];
    if (g.col_lower[j] && x[j] < *g.col_lower[j]) return false;
    if (g.col_upper[j] && x[j] > *g.col_upper[j]) return false;
    if (at_lo && at_up) continue;
    if (at_lo ? z[j].sign() < 0 : at_up ? z[j].sign() > 0 : !z[j].is_zero()) return false;
  }
  return true;
}

// Minimum over every choice of active rows and active bounds.
std::optional<Rational> general_brute_force(const GeneralQP& g) {
  const std::size_t n = g.num_cols();
  const std::size_t m = g.num_rows();
  const DenseRatMatrix q = g.q.to_dense();
  const DenseRatMatrix a = g.a.to_dense();
  std::optional<Rational> best;
  std::vector<int> rs(m), cs(n);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k < m) {
      for (int s = 0; s < 3; ++s) {
        if ((s == 1 && !g.row_lower[k]) || (s == 2 && !g.row_upper[k])) continue;
        rs[k] = s;
        rec(k + 1);
      }
      return;
    }
    if (k < m + n) {
      const std::size_t j = k - m;
      for (int s = 0; s < 3; ++s) {
        if ((s == 1 && !g.col_lower[j]) || (s == 2 && !g.col_upper[j])) continue;
        cs[j] = s;
        rec(k + 1);
      }
      return;
    }
    std::vector<std::size_t> act;
    for (std::size_t i = 0; i < m; ++i) {
      if (rs[i]) act.push_back(i);
    }
    std::vector<std::size_t> fixed;
    for (std::size_t j = 0; j < n; ++j) {
      if (cs[j]) fixed.push_back(j);
    }
    const std::size_t dim = n + act.size() + fixed.size();
    DenseRatMatrix k2(dim, RatVector(dim));
    RatVector rhs(dim);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) k2[i][j] = q[i][j];
      rhs[i] = -g.c[i];
      for (std::size_t r = 0; r < act.size(); ++r) k2[i][n + r] = -a[act[r]][i];
      for (std::size_t r = 0; r < fixed.size(); ++r) k2[i][n + act.size() + r] = fixed[r] == i ? Rational(-1) : Rational();
    }
    for (std::size_t r = 0; r < act.size(); ++r) {
      for (std::size_t j = 0; j < n; ++j) k2[n + r][j] = a[act[r]][j];
      rhs[n + r] = rs[act[r]] == 1 ? *g.row_lower[act[r]] : *g.row_upper[act[r]];
    }
    for (std::size_t r = 0; r < fixed.size(); ++r) {
      k2[n + act.size() + r][fixed[r]] = Rational(1);
      rhs[n + act.size() + r] = cs[fixed[r]] == 1 ? *g.col_lower[fixed[r]] : *g.col_upper[fixed[r]];
    }
    const auto sol = gauss_jordan(std::move(k2), std::move(rhs));
    if (!sol) return;
    for (std::size_t c : sol->free_columns) {
      if (c < n) return;
    }
    const RatVector x(sol->values.begin(), sol->values.begin() + static_cast<std::ptrdiff_t>(n));
    const RatVector ax = g.a.multiply(x);
    for (std::size_t i = 0; i < m; ++i) {
      if ((g.row_lower[i] && ax[i] < *g.row_lower[i]) || (g.row_upper[i] && ax[i] > *g.row_upper[i])) return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if ((g.col_lower[j] && x[j] < *g.col_lower[j]) || (g.col_upper[j] && x[j] > *g.col_upper[j])) return;
    }
    const Rational obj = objective_exact(g, x);
    if (!best || obj < *best) best = obj;
  };
  rec(0);
  return best;
}

GeneralQP mixed_instance() {
  GeneralQP g;
  g.name = "MIXED";
  g.col_names = {"a", "b", "c"};
  g.row_names = {"e", "l", "r"};
  g.q = RatMatrix::from_dense({{Rational(2), Rational(1), Rational()},
                               {Rational(1), Rational(3), Rational()},
                               {Rational(), Rational(), Rational(1)}},
                              true);
  g.c = {Rational(-4), frac(1, 3), Rational(-2)};
  g.a = RatMatrix::from_dense({{Rational(1), Rational(1), Rational(1)},
                               {Rational(1), Rational(-1), Rational()},
                               {Rational(), Rational(2), Rational(1)}});
  g.row_lower = {Rational(2), std::nullopt, Rational(1)};
  g.row_upper = {Rational(2), frac(1, 2), Rational(3)};
  g.col_lower = {Rational(), Rational(-1), std::nullopt};
  g.col_upper = {std::nullopt, Rational(2), Rational(1)};
  return g;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("an equality-only instance gains no slacks") {
    const StandardQP p = to_standard_form(example1_general());
    CHECK(p.n() == 2);
    CHECK(p.m() == 1);
    CHECK(p.slack_map.empty());
    CHECK(p.b[0] == Rational::pow10(-6));
    CHECK(*p.q == *example1().q);
    CHECK(*p.a == *example1().a);
  }

  TEST_CASE("a ranged row becomes an equality with a bounded slack") {
    GeneralQP g;
    g.col_names = {"x1", "x2"};
    g.row_names = {"r"};
    g.q = RatMatrix(2, 2);
    g.c = {Rational(1), Rational(1)};
    g.a = RatMatrix::from_dense({{Rational(1), Rational(1)}});
    g.row_lower = {Rational(1)};
    g.row_upper = {Rational(3)};
    g.col_lower = {Rational(), Rational()};
    g.col_upper = {std::nullopt, std::nullopt};
    const StandardQP p = to_standard_form(g);
    REQUIRE(p.n() == 3);
    CHECK(p.a->entry(0, 2) == Rational(-1));
    CHECK(p.b[0].is_zero());
    CHECK(p.lower[2] == Rational(1));
    CHECK(p.upper[2] == Rational(3));
    CHECK(p.col_names[2] == "slack_r");
    REQUIRE(p.slack_map.size() == 1);
    CHECK(p.slack_map[0].column == 2);

    const Iterate it{{Rational(1), Rational(), Rational(1)}, {Rational(1)}};
    const GeneralSolution s = recover_solution(p, it);
    CHECK(s.x == RatVector{Rational(1), Rational()});
    CHECK(s.row_duals == RatVector{Rational(1)});
    const Iterate lifted = lift_to_standard(p, s.x, s.row_duals);
    CHECK(lifted.x == it.x);
  }

  TEST_CASE("standard and general forms share the optimal value") {
    const GeneralQP g = mixed_instance();
    const auto general = general_brute_force(g);
    const Enumerated standard = enumerate_active_sets(to_standard_form(g));
    REQUIRE(general);
    REQUIRE(standard.found);
    CHECK(*general == standard.objective);
  }

  TEST_CASE("recovered exact solutions satisfy the general KKT conditions") {
    Rng rng(2024);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
      GeneralQP g = random_general_qp(rng, 4, 2);
      // Make Q positive definite so the optimum exists and is unique.
      std::vector<RatEntry> q;
      for (std::size_t i = 0; i < 4; ++i) q.push_back({i, i, Rational(2)});
      g.q = RatMatrix::from_entries(4, 4, std::move(q), true);
      const StandardQP p = to_standard_form(g);
      const Enumerated e = enumerate_active_sets(p);
      if (!e.found || !e.regular) continue;
      const BasisSolveResult r = rational_basis_solve(p, e.basis);
      REQUIRE(r.status == BasisSolveStatus::optimal);
      const GeneralSolution s = recover_solution(p, r.iterate);
      CHECK(general_kkt(g, s.x, s.row_duals));
      ++checked;
    }
    CHECK(checked >= 10);
  }

  TEST_CASE("rounding keeps representable data bit-identical") {
    StandardQP p = example1();
    p.b = {Rational::pow2(-20)};
    p.c[1] = Rational(1) + Rational::pow2(-20);
    const FloatQP f = round_to_float(p);
    CHECK(f.b[0] == std::ldexp(1.0, -20));
    CHECK(f.c[1] == 1.0 + std::ldexp(1.0, -20));
    CHECK(f.lower[0] == 0.0);
    CHECK(f.upper[0] == INFINITY);
    CHECK(f.clamped == 0);
    CHECK((*f.q)(0, 0) == 1.0);
    CHECK((*f.a)(0, 1) == 1.0);
  }

  TEST_CASE("rounding takes the nearest double") {
    StandardQP p = example1();
    p.c[0] = frac(1, 3);
    p.b[0] = Rational::pow10(400);
    const FloatQP f = round_to_float(p);
    CHECK(f.c[0] == 1.0 / 3.0);
    CHECK(f.b[0] == DBL_MAX);
    CHECK(f.clamped == 1);
    Rng rng(3);
    const StandardQP r = random_standard_qp(rng, 6, 3);
    const FloatQP fr = round_to_float(r);
    auto within = [](const Rational& exact, double d) {
      const double ulp = std::nextafter(std::fabs(d), INFINITY) - std::fabs(d);
      return (Rational::from_double(d) - exact).abs() <= Rational::from_double(ulp) / Rational(2);
    };
    for (std::size_t j = 0; j < r.n(); ++j) {
      CHECK(within(r.c[j], fr.c[j]));
      CHECK(within(*r.lower[j], fr.lower[j]));
      for (std::size_t i = 0; i < r.m(); ++i) CHECK(within(r.a->entry(i, j), (*fr.a)(i, j)));
    }
  }

  TEST_CASE("rounded matrices are shared between refinements") {
    const StandardQP p = example1();
    const FloatQP f = round_to_float(p);
    StandardQP shifted = p;
    shifted.c = {Rational(), Rational(1)};
    const FloatQP g = round_to_float(shifted, &f);
    CHECK(g.q == f.q);
    CHECK(g.a == f.a);
    CHECK(g.c[1] == 1.0);
  }

  TEST_CASE("exact objective") {
    const StandardQP p = example1();
    const Rational micro = Rational::pow10(-6);
    CHECK(objective_exact(p, {micro, Rational()}) == micro * micro / Rational(2) + micro);
    StandardQP k = p;
    k.objective_constant = frac(-7, 3);
    CHECK(objective_exact(k, {Rational(), Rational()}) == frac(-7, 3));
    Rng rng(9);
    const StandardQP r = random_standard_qp(rng, 5, 2);
    const Iterate it = random_iterate(rng, r);
    long double v = static_cast<long double>(to_double(r.objective_constant));
    long double scale = std::fabs(v);
    for (std::size_t i = 0; i < 5; ++i) {
      long double qx = 0;
      for (std::size_t j = 0; j < 5; ++j) {
        qx += static_cast<long double>(to_double(r.q->entry(i, j))) * to_double(it.x[j]);
      }
      const long double term = static_cast<long double>(to_double(it.x[i])) * (qx / 2 + to_double(r.c[i]));
      v += term;
      scale += std::fabs(term) + std::fabs(qx);
    }
    CHECK(std::fabs(static_cast<long double>(to_double(objective_exact(r, it.x))) - v) <= 1e-14L * (1 + scale));
  }

  TEST_CASE("inconsistent data is rejected") {
    GeneralQP g = example1_general();
    g.col_lower[0] = Rational(2);
    g.col_upper[0] = Rational(1);
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    StandardQP p = example1();
    p.c.pop_back();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  }
}
