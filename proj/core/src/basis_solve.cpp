#include "qprefine/basis_solve.hpp"

#include <stdexcept>

#include "qprefine/rat_lu.hpp"
#include "qprefine/timing.hpp"

namespace qprefine {

BasisSolveResult rational_basis_solve(const StandardQP& p, const Basis& basis) {
  RationalScope scope;
  const std::size_t n = p.n();
  const std::size_t m = p.m();
  if (basis.size() != n) throw std::invalid_argument("rational_basis_solve: basis size mismatch");

  BasisSolveResult out;
  RatVector x(n);
  std::vector<std::size_t> position(n, n);
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < n; ++j) {
    const auto s = basis.status[j];
    if (s == VarStatus::at_lower && p.lower[j]) {
      x[j] = *p.lower[j];
    } else if (s == VarStatus::at_upper && p.upper[j]) {
      x[j] = *p.upper[j];
    } else if (s == VarStatus::basic) {
      position[j] = free.size();
      free.push_back(j);
    } else {
      return out;
    }
  }

  // [Q_FF  -A_Fᵀ] [x_F]   [-c_F - Q_FN x_N]
  // [A_F     0  ] [ y ] = [ b - A_N x_N   ]
  const std::size_t f = free.size();
  DenseRatMatrix k(f + m, RatVector(f + m));
  RatVector rhs(f + m);
  for (std::size_t r = 0; r < f; ++r) rhs[r] = -p.c[free[r]];
  for (std::size_t i = 0; i < m; ++i) rhs[f + i] = p.b[i];
  for (const auto& e : p.q->entries()) {
    if (position[e.row] == n) continue;
    if (position[e.col] != n) {
      k[position[e.row]][position[e.col]] = e.value;
    } else if (!x[e.col].is_zero()) {
      rhs[position[e.row]] -= e.value * x[e.col];
    }
  }
  for (const auto& e : p.a->entries()) {
    if (position[e.col] != n) {
      k[f + e.row][position[e.col]] = e.value;
      k[position[e.col]][f + e.row] = -e.value;
    } else if (!x[e.col].is_zero()) {
      rhs[f + e.row] -= e.value * x[e.col];
    }
  }

  const RatLU lu = lu_factor(std::move(k));
  if (!lu.rank_ok) return out;
  const RatVector sol = lu_solve(lu, rhs);
  for (std::size_t r = 0; r < f; ++r) x[free[r]] = sol[r];
  out.iterate.x = std::move(x);
  out.iterate.y.assign(sol.begin() + static_cast<std::ptrdiff_t>(f), sol.end());
  const KktCheck check = verify_kkt_exact(p, out.iterate);
  out.z = check.residuals.c_hat;
  out.status = check.exact_optimal ? BasisSolveStatus::optimal : BasisSolveStatus::not_optimal;
  return out;
}

}  // namespace qprefine
