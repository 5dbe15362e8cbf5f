#include <cmath>

#include "brute_force.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "qprefine/basis_solve.hpp"
#include "qprefine/residuals.hpp"

using namespace qprefine;
using namespace qprefine::testing;

namespace {

Rational frac(long p, long q) { return Rational(mpz_class(p), mpz_class(q)); }

long double ld(const Rational& r) {
  return static_cast<long double>(r.value().get_num().get_d()) / static_cast<long double>(r.value().get_den().get_d());
}

}  // namespace

TEST_SUITE("residuals") {
  TEST_CASE("golden instance at the rounded solution") {
    const StandardQP p = example1();
    const Residuals r = compute_residuals(p, {{Rational(), Rational()}, {Rational(1)}});
    const Rational micro = Rational::pow10(-6);
    CHECK(r.b_hat == RatVector{micro});
    CHECK(r.c_hat == RatVector{Rational(), micro});
    CHECK(r.l_hat == BoundVector{Rational(), Rational()});
    CHECK(r.delta_p == micro);
    CHECK(r.delta_d.is_zero());
    CHECK(r.delta_s.is_zero());
    const KktCheck k = verify_kkt_exact(p, {{Rational(), Rational()}, {Rational(1)}});
    CHECK_FALSE(k.exact_optimal);
    CHECK(k.residuals.delta_p == micro);
  }

  TEST_CASE("golden instance at the exact solution") {
    const StandardQP p = example1();
    const Rational micro = Rational::pow10(-6);
    const Iterate it{{micro, Rational()}, {Rational(1) + micro}};
    const Residuals r = compute_residuals(p, it);
    CHECK(r.all_zero());
    CHECK(r.c_hat == RatVector{Rational(), Rational()});
    CHECK(verify_kkt_exact(p, it).exact_optimal);
  }

  TEST_CASE("dual violation depends on where each variable sits") {
    // One variable per position class, no rows.
    const StandardQP p = make_standard_qp(RatMatrix(4, 4), RatMatrix(0, 4),
                                          {Rational(-1), Rational(-2), Rational(3), Rational(-5)}, {},
                                          {Rational(), std::nullopt, Rational(), Rational(1)},
                                          {std::nullopt, Rational(), Rational(), Rational(1)});
    // x0 at lower with ĉ = -1, x1 at upper with ĉ = -2, x2 fixed with ĉ = 3,
    // x3 fixed with ĉ = -5.
    Residuals r = compute_residuals(p, {{Rational(), Rational(), Rational(), Rational(1)}, {}});
    CHECK(r.delta_d == Rational(1));
    CHECK(r.delta_s.is_zero());
    // x1 strictly inside (free below, upper 0) contributes |ĉ|.
    r = compute_residuals(p, {{Rational(), Rational(-1), Rational(), Rational(1)}, {}});
    CHECK(r.delta_d == Rational(2));
    CHECK(r.delta_s == Rational(2));
    // x0 above its lower bound with ĉ = -1: |ĉ| and complementarity 0.
    r = compute_residuals(p, {{frac(1, 2), Rational(), Rational(), Rational(1)}, {}});
    CHECK(r.delta_d == Rational(1));
    CHECK(r.delta_s.is_zero());
    // Primal violations of both bound kinds.
    r = compute_residuals(p, {{Rational(-3), Rational(2), Rational(), Rational(1)}, {}});
    CHECK(r.delta_p == Rational(3));
    CHECK(*r.u_hat[1] == Rational(2));
  }

  TEST_CASE("complementarity sums signed products") {
    const StandardQP p = make_standard_qp(RatMatrix(2, 2), RatMatrix(0, 2), {Rational(1), Rational(-1)}, {},
                                          {Rational(), Rational()}, {Rational(4), Rational(4)});
    const Residuals r = compute_residuals(p, {{Rational(1), Rational(1)}, {}});
    // (1-0)·1 + (4-1)·1
    CHECK(r.delta_s == Rational(4));
  }

  TEST_CASE("random iterates agree with a long double evaluation") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
      QpShape shape;
      shape.finite_box = false;
      const StandardQP p = random_standard_qp(rng, 5, 2, shape);
      const Iterate it = random_iterate(rng, p);
      const Residuals r = compute_residuals(p, it);
      long double scale = 1;
      for (std::size_t i = 0; i < p.m(); ++i) {
        long double v = ld(p.b[i]);
        for (std::size_t j = 0; j < p.n(); ++j) {
          const long double t2 = ld(p.a->entry(i, j)) * ld(it.x[j]);
          v -= t2;
          scale += std::fabs(t2);
        }
        CHECK(std::fabs(v - ld(r.b_hat[i])) <= 1e-15L * scale);
      }
      for (std::size_t j = 0; j < p.n(); ++j) {
        long double v = ld(p.c[j]);
        long double sc = 1 + std::fabs(v);
        for (std::size_t k = 0; k < p.n(); ++k) {
          v += ld(p.q->entry(j, k)) * ld(it.x[k]);
          sc += std::fabs(ld(p.q->entry(j, k)) * ld(it.x[k]));
        }
        for (std::size_t i = 0; i < p.m(); ++i) {
          v -= ld(p.a->entry(i, j)) * ld(it.y[i]);
          sc += std::fabs(ld(p.a->entry(i, j)) * ld(it.y[i]));
        }
        CHECK(std::fabs(v - ld(r.c_hat[j])) <= 1e-15L * sc);
      }
      CHECK(r.delta_p.sign() > 0);
      CHECK_FALSE(verify_kkt_exact(p, it).exact_optimal);
    }
  }

  TEST_CASE("dimension mismatch") {
    CHECK_THROWS_AS(compute_residuals(example1(), {{Rational()}, {Rational()}}), std::invalid_argument);
  }
}

TEST_SUITE("basis_solve") {
  TEST_CASE("golden instance optimal basis") {
    const StandardQP p = example1();
    const BasisSolveResult r = rational_basis_solve(p, {{VarStatus::basic, VarStatus::at_lower}});
    REQUIRE(r.status == BasisSolveStatus::optimal);
    const Rational micro = Rational::pow10(-6);
    CHECK(r.iterate.x == RatVector{micro, Rational()});
    CHECK(r.iterate.y == RatVector{Rational(1) + micro});
    CHECK(r.z == RatVector{Rational(), Rational()});
  }

  TEST_CASE("one-variable interior optimum") {
    const StandardQP p = make_standard_qp(RatMatrix::identity(1), RatMatrix(0, 1), {Rational(-1)}, {},
                                          {Rational()}, {std::nullopt});
    const BasisSolveResult r = rational_basis_solve(p, {{VarStatus::basic}});
    REQUIRE(r.status == BasisSolveStatus::optimal);
    CHECK(r.iterate.x == RatVector{Rational(1)});
    CHECK(r.iterate.y.empty());
    CHECK(r.z == RatVector{Rational()});
  }

  TEST_CASE("wrong bases are reported") {
    const StandardQP p = example1();
    CHECK(rational_basis_solve(p, {{VarStatus::at_lower, VarStatus::basic}}).status ==
          BasisSolveStatus::not_optimal);
    CHECK(rational_basis_solve(p, {{VarStatus::basic, VarStatus::at_upper}}).status ==
          BasisSolveStatus::singular);
    CHECK(rational_basis_solve(p, {{VarStatus::at_lower, VarStatus::at_lower}}).status ==
          BasisSolveStatus::singular);
    CHECK_THROWS_AS(rational_basis_solve(p, {{VarStatus::basic}}), std::invalid_argument);
  }

  TEST_CASE("enumerated bases certify the enumerated optimum") {
    Rng rng(123);
    int checked = 0;
    for (int t = 0; t < 20; ++t) {
      const StandardQP p = random_standard_qp(rng, 5, 2);
      const Enumerated e = enumerate_active_sets(p);
      REQUIRE(e.found);
      if (!e.regular) continue;
      const BasisSolveResult r = rational_basis_solve(p, e.basis);
      REQUIRE(r.status == BasisSolveStatus::optimal);
      CHECK(r.iterate.x == e.x);
      CHECK(objective_exact(p, r.iterate.x) == e.objective);
      ++checked;
    }
    CHECK(checked >= 15);
  }
}
