#include "qprefine/active_set_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace qprefine {

std::string_view to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::optimal:
      return "optimal";
    case OracleStatus::iteration_limit:
      return "iteration_limit";
    case OracleStatus::numerical_failure:
      return "numerical_failure";
  }
  return "unknown";
}

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using Indices = std::vector<Index>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kBlandAfter = 20;

struct Problem {
  const MatrixXd* h = nullptr;  // nullptr: zero Hessian
  const MatrixXd* a = nullptr;
  VectorXd g;
  VectorXd b;
  VectorXd lo;
  VectorXd up;

  Index n() const { return g.size(); }
  Index m() const { return b.size(); }
  bool fixed(Index i) const { return lo[i] == up[i]; }
  VectorXd gradient(const VectorXd& x) const { return h ? VectorXd(*h * x + g) : g; }
};

enum class PhaseOutcome { optimal, iteration_limit, unbounded };

Indices free_set(const std::vector<VarStatus>& st) {
  Indices f;
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (st[i] == VarStatus::basic) f.push_back(static_cast<Index>(i));
  }
  return f;
}

MatrixXd gather_cols(const MatrixXd& a, const Indices& idx) {
  MatrixXd out(a.rows(), static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Index>(k)) = a.col(idx[k]);
  return out;
}

MatrixXd gather_block(const MatrixXd& h, const Indices& rows, const Indices& cols) {
  MatrixXd out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Index>(i), static_cast<Index>(j)) = h(rows[i], cols[j]);
    }
  }
  return out;
}

VectorXd kkt_solve(const MatrixXd& k, const VectorXd& rhs) {
  const Eigen::FullPivLU<MatrixXd> lu(k);
  if (lu.isInvertible()) return lu.solve(rhs);
  return k.completeOrthogonalDecomposition().solve(rhs);
}

VectorXd gather(const VectorXd& v, const Indices& idx) {
  VectorXd out(static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out[static_cast<Index>(k)] = v[idx[k]];
  return out;
}

struct NullSpace {
  MatrixXd z;
  Eigen::ColPivHouseholderQR<MatrixXd> qr;
  bool has_rows = false;
};

NullSpace null_space(const MatrixXd& af) {
  NullSpace ns;
  const Index f = af.cols();
  if (af.rows() == 0 || f == 0) {
    ns.z = MatrixXd::Identity(f, f);
    return ns;
  }
  ns.has_rows = true;
  ns.qr.setThreshold(1e-11);
  ns.qr.compute(af.transpose());
  const Index rank = ns.qr.rank();
  MatrixXd q = ns.qr.householderQ();
  ns.z = q.rightCols(f - rank);
  return ns;
}

VectorXd multipliers(const NullSpace& ns, const Problem& p, const VectorXd& grad_f) {
  if (!ns.has_rows) return VectorXd::Zero(p.m());
  return ns.qr.solve(grad_f);
}

MatrixXd reduced_hessian(const Problem& p, const Indices& f, const MatrixXd& z) {
  if (!p.h || z.cols() == 0) return MatrixXd::Zero(z.cols(), z.cols());
  const MatrixXd hz = gather_block(*p.h, f, f) * z;
  MatrixXd r = z.transpose() * hz;
  return (r + r.transpose()) / 2;
}

double curvature_tolerance(const Eigen::VectorXd& eigenvalues) {
  const double scale = eigenvalues.size() ? std::max(1.0, eigenvalues.cwiseAbs().maxCoeff()) : 1.0;
  return 1e-10 * scale;
}

struct Block {
  Index var = -1;
  double step = kInf;
  VarStatus bound = VarStatus::basic;
};

// Longest step along `dir` (on the free set) keeping bounds. Ties go to the
// smallest variable index.
Block ratio_test(const Problem& p, const VectorXd& x, const Indices& f, const VectorXd& dir) {
  const double norm = dir.lpNorm<Eigen::Infinity>();
  const double ignore = 1e-12 * norm;
  std::vector<Block> cand;
  double best = kInf;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Index i = f[k];
    const double d = dir[static_cast<Index>(k)];
    Block b;
    if (d < -ignore && std::isfinite(p.lo[i])) {
      b = {i, std::max(0.0, x[i] - p.lo[i]) / -d, VarStatus::at_lower};
    } else if (d > ignore && std::isfinite(p.up[i])) {
      b = {i, std::max(0.0, p.up[i] - x[i]) / d, VarStatus::at_upper};
    } else {
      continue;
    }
    best = std::min(best, b.step);
    cand.push_back(b);
  }
  Block chosen;
  for (const auto& b : cand) {
    if (b.step <= best * (1 + 1e-10) && (chosen.var < 0 || b.var < chosen.var)) chosen = b;
  }
  if (chosen.var >= 0) chosen.step = best;
  return chosen;
}

void move(VectorXd& x, const Indices& f, const VectorXd& dir, double t) {
  for (std::size_t k = 0; k < f.size(); ++k) x[f[k]] += t * dir[static_cast<Index>(k)];
}

void apply_block(const Problem& p, VectorXd& x, std::vector<VarStatus>& st, const Block& b) {
  x[b.var] = b.bound == VarStatus::at_lower ? p.lo[b.var] : p.up[b.var];
  st[static_cast<std::size_t>(b.var)] = b.bound;
}

PhaseOutcome run_phase(const Problem& p, VectorXd& x, std::vector<VarStatus>& st, double price_tol,
                       std::size_t max_iter, std::size_t& iters) {
  std::size_t degenerate = 0;
  while (true) {
    if (iters >= max_iter) return PhaseOutcome::iteration_limit;
    const Indices f = free_set(st);
    VectorXd grad = p.gradient(x);
    const MatrixXd af = gather_cols(*p.a, f);
    const NullSpace ns = null_space(af);

    if (ns.z.cols() > 0) {
      const VectorXd gf = gather(grad, f);
      const VectorXd rg = ns.z.transpose() * gf;
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(reduced_hessian(p, f, ns.z));
      const VectorXd& lam = es.eigenvalues();
      const MatrixXd& v = es.eigenvectors();
      const double lam_tol = curvature_tolerance(lam);
      const double g_tol = 1e-11 * (1 + gf.lpNorm<Eigen::Infinity>());
      const VectorXd w = v.transpose() * rg;
      VectorXd d = VectorXd::Zero(ns.z.cols());
      bool descent = false;
      for (Index i = 0; i < lam.size(); ++i) {
        if (lam[i] <= lam_tol && std::abs(w[i]) > g_tol) {
          d -= w[i] * v.col(i);
          descent = true;
        }
      }
      if (!descent) {
        for (Index i = 0; i < lam.size(); ++i) {
          if (lam[i] > lam_tol) d -= (w[i] / lam[i]) * v.col(i);
        }
      }
      const VectorXd dir = ns.z * d;
      const double t_max = descent ? kInf : 1.0;
      const double xf_norm = gather(x, f).lpNorm<Eigen::Infinity>();
      if (descent || dir.lpNorm<Eigen::Infinity>() > 1e-15 * (1 + xf_norm)) {
        const Block b = ratio_test(p, x, f, dir);
        if (b.var >= 0 && b.step < t_max) {
          move(x, f, dir, b.step);
          apply_block(p, x, st, b);
          ++iters;
          degenerate = b.step == 0 ? degenerate + 1 : 0;
          continue;
        }
        if (descent) return PhaseOutcome::unbounded;
        move(x, f, dir, 1.0);
        ++iters;
        degenerate = 0;
        grad = p.gradient(x);
      }
    }

    const VectorXd y = multipliers(ns, p, gather(grad, f));
    const VectorXd z = grad - p.a->transpose() * y;
    Index release = -1;
    double worst = price_tol;
    const bool bland = degenerate >= kBlandAfter;
    for (Index i = 0; i < p.n(); ++i) {
      const auto s = st[static_cast<std::size_t>(i)];
      if (s == VarStatus::basic || p.fixed(i)) continue;
      const double viol = s == VarStatus::at_lower ? -z[i] : z[i];
      if (viol <= price_tol) continue;
      if (bland) {
        release = i;
        break;
      }
      if (viol > worst) {
        worst = viol;
        release = i;
      }
    }
    if (release < 0) return PhaseOutcome::optimal;
    st[static_cast<std::size_t>(release)] = VarStatus::basic;
    ++iters;
  }
}

// Adds nonbasic columns, in index order, until the free columns of A span
// its column space.
void ensure_row_rank(const Problem& p, std::vector<VarStatus>& st) {
  const Index m = p.m();
  if (m == 0) return;
  MatrixXd u(m, 0);
  auto residual = [&](const VectorXd& col) {
    VectorXd r = col;
    for (int pass = 0; pass < 2; ++pass) r -= u * (u.transpose() * r);
    return r;
  };
  auto try_add = [&](Index j) {
    const VectorXd col = p.a->col(j);
    const double norm = col.norm();
    if (norm == 0) return false;
    const VectorXd r = residual(col);
    if (r.norm() <= 1e-9 * norm) return false;
    u.conservativeResize(m, u.cols() + 1);
    u.col(u.cols() - 1) = r / r.norm();
    return true;
  };
  for (Index j = 0; j < p.n(); ++j) {
    if (st[static_cast<std::size_t>(j)] == VarStatus::basic) try_add(j);
  }
  for (Index j = 0; j < p.n() && u.cols() < m; ++j) {
    if (st[static_cast<std::size_t>(j)] == VarStatus::basic || p.fixed(j)) continue;
    if (try_add(j)) st[static_cast<std::size_t>(j)] = VarStatus::basic;
  }
}

void cold_start(const Problem& p, VectorXd& x, std::vector<VarStatus>& st) {
  for (Index i = 0; i < p.n(); ++i) {
    const double v = std::clamp(0.0, p.lo[i], p.up[i]);
    x[i] = v;
    auto& s = st[static_cast<std::size_t>(i)];
    if (v == p.lo[i]) {
      s = VarStatus::at_lower;
    } else if (v == p.up[i]) {
      s = VarStatus::at_upper;
    } else {
      s = VarStatus::basic;
    }
  }
}

bool warm_start(const Problem& p, const Basis& warm, VectorXd& x, std::vector<VarStatus>& st) {
  for (Index i = 0; i < p.n(); ++i) {
    const auto w = warm.status[static_cast<std::size_t>(i)];
    auto& s = st[static_cast<std::size_t>(i)];
    if (p.fixed(i) || (w == VarStatus::at_lower && std::isfinite(p.lo[i]))) {
      s = VarStatus::at_lower;
      x[i] = p.lo[i];
    } else if (w == VarStatus::at_upper && std::isfinite(p.up[i])) {
      s = VarStatus::at_upper;
      x[i] = p.up[i];
    } else {
      s = VarStatus::basic;
      x[i] = 0;
    }
  }
  const Indices f = free_set(st);
  if (f.empty()) return true;
  Indices w;
  for (Index i = 0; i < p.n(); ++i) {
    if (st[static_cast<std::size_t>(i)] != VarStatus::basic) w.push_back(i);
  }
  const Index nf = static_cast<Index>(f.size());
  const Index m = p.m();
  MatrixXd k = MatrixXd::Zero(nf + m, nf + m);
  VectorXd rhs(nf + m);
  const VectorXd xw = gather(x, w);
  if (p.h) {
    k.topLeftCorner(nf, nf) = gather_block(*p.h, f, f);
    rhs.head(nf) = -gather(p.g, f) - gather_block(*p.h, f, w) * xw;
  } else {
    rhs.head(nf) = -gather(p.g, f);
  }
  const MatrixXd af = gather_cols(*p.a, f);
  k.topRightCorner(nf, m) = af.transpose();
  k.bottomLeftCorner(m, nf) = af;
  rhs.tail(m) = p.b - gather_cols(*p.a, w) * xw;
  const VectorXd sol = kkt_solve(k, rhs);
  if (!sol.allFinite()) return false;
  for (Index k2 = 0; k2 < nf; ++k2) {
    const Index i = f[static_cast<std::size_t>(k2)];
    x[i] = std::clamp(sol[k2], p.lo[i], p.up[i]);
  }
  return true;
}

long double max_abs_residual(const Problem& p, const VectorXd& x, VectorXd* out = nullptr) {
  long double worst = 0;
  if (out) out->resize(p.m());
  for (Index r = 0; r < p.m(); ++r) {
    long double s = p.b[r];
    for (Index j = 0; j < p.n(); ++j) s -= static_cast<long double>((*p.a)(r, j)) * x[j];
    worst = std::max(worst, std::abs(s));
    if (out) (*out)[r] = static_cast<double>(s);
  }
  return worst;
}

// Minimises the sum of artificial variables, one per row. On success x
// satisfies Ax = b up to `tol` and st holds the basis of the x part.
OracleStatus phase_one(const Problem& p, VectorXd& x, std::vector<VarStatus>& st, double tol,
                       std::size_t max_iter, std::size_t& iters) {
  const Index n = p.n();
  const Index m = p.m();
  VectorXd r;
  max_abs_residual(p, x, &r);
  MatrixXd ae(m, n + m);
  ae.leftCols(n) = *p.a;
  ae.rightCols(m).setZero();
  for (Index i = 0; i < m; ++i) ae(i, n + i) = r[i] < 0 ? -1.0 : 1.0;
  Problem q;
  q.a = &ae;
  q.g = VectorXd::Zero(n + m);
  q.g.tail(m).setOnes();
  q.b = p.b;
  q.lo.resize(n + m);
  q.up.resize(n + m);
  q.lo << p.lo, VectorXd::Zero(m);
  q.up << p.up, VectorXd::Constant(m, kInf);
  VectorXd xe(n + m);
  xe << x, r.cwiseAbs();
  std::vector<VarStatus> ste = st;
  ste.resize(static_cast<std::size_t>(n + m), VarStatus::basic);
  const PhaseOutcome out = run_phase(q, xe, ste, 1e-10, max_iter, iters);
  if (out == PhaseOutcome::iteration_limit) return OracleStatus::iteration_limit;
  if (out == PhaseOutcome::unbounded) return OracleStatus::numerical_failure;
  if (xe.tail(m).maxCoeff() > tol) return OracleStatus::numerical_failure;
  x = xe.head(n);
  st.assign(ste.begin(), ste.begin() + n);
  return OracleStatus::optimal;
}

// Moves along zero-curvature directions of the final face until the
// reduced Hessian is positive definite or no bound blocks. The objective
// and reduced costs are unchanged by such moves.
void regularize(const Problem& p, VectorXd& x, std::vector<VarStatus>& st) {
  for (Index guard = 0; guard <= p.n(); ++guard) {
    const Indices f = free_set(st);
    const NullSpace ns = null_space(gather_cols(*p.a, f));
    if (ns.z.cols() == 0) return;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(reduced_hessian(p, f, ns.z));
    if (es.eigenvalues()[0] > curvature_tolerance(es.eigenvalues())) return;
    const VectorXd dir = ns.z * es.eigenvectors().col(0);
    const Block fwd = ratio_test(p, x, f, dir);
    const Block bwd = ratio_test(p, x, f, -dir);
    if (fwd.var < 0 && bwd.var < 0) return;
    const bool use_fwd = bwd.var < 0 || (fwd.var >= 0 && fwd.step <= bwd.step);
    const Block& b = use_fwd ? fwd : bwd;
    move(x, f, use_fwd ? dir : VectorXd(-dir), b.step);
    apply_block(p, x, st, b);
  }
}

void polish(const Problem& p, VectorXd& x, VectorXd& y, const std::vector<VarStatus>& st, std::size_t steps) {
  const Indices f = free_set(st);
  const Index nf = static_cast<Index>(f.size());
  const Index m = p.m();
  if (steps == 0 || nf + m == 0) return;
  MatrixXd k = MatrixXd::Zero(nf + m, nf + m);
  if (p.h) k.topLeftCorner(nf, nf) = gather_block(*p.h, f, f);
  const MatrixXd af = gather_cols(*p.a, f);
  k.topRightCorner(nf, m) = -af.transpose();
  k.bottomLeftCorner(m, nf) = af;
  const auto solver = k.completeOrthogonalDecomposition();
  for (std::size_t s = 0; s < steps; ++s) {
    VectorXd rhs(nf + m);
    for (Index kk = 0; kk < nf; ++kk) {
      const Index i = f[static_cast<std::size_t>(kk)];
      long double v = p.g[i];
      if (p.h) {
        for (Index j = 0; j < p.n(); ++j) v += static_cast<long double>((*p.h)(i, j)) * x[j];
      }
      for (Index r = 0; r < m; ++r) v -= static_cast<long double>((*p.a)(r, i)) * y[r];
      rhs[kk] = static_cast<double>(-v);
    }
    VectorXd rp;
    max_abs_residual(p, x, &rp);
    rhs.tail(m) = rp;
    if (rhs.lpNorm<Eigen::Infinity>() == 0) return;
    const VectorXd d = solver.solve(rhs);
    if (!d.allFinite()) return;
    for (Index kk = 0; kk < nf; ++kk) x[f[static_cast<std::size_t>(kk)]] += d[kk];
    y += d.tail(m);
  }
}

}  // namespace

struct ActiveSetOracle::Impl {
  std::shared_ptr<const DenseMatrix> q_src;
  std::shared_ptr<const DenseMatrix> a_src;
  MatrixXd h;
  MatrixXd a;
  bool h_zero = true;

  void refresh(const FloatQP& qp) {
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    if (qp.q != q_src) {
      q_src = qp.q;
      h = Eigen::Map<const RowMajor>(qp.q->data.data(), static_cast<Index>(qp.q->rows),
                                     static_cast<Index>(qp.q->cols));
      h_zero = h.size() == 0 || h.cwiseAbs().maxCoeff() == 0;
    }
    if (qp.a != a_src) {
      a_src = qp.a;
      a = Eigen::Map<const RowMajor>(qp.a->data.data(), static_cast<Index>(qp.a->rows),
                                     static_cast<Index>(qp.a->cols));
    }
  }

  OracleResult solve(const FloatQP& qp, const OracleSettings& settings, const std::optional<Basis>& warm) {
    refresh(qp);
    const Index n = static_cast<Index>(qp.n());
    const Index m = static_cast<Index>(qp.m());
    const double tol = settings.termination_tolerance;
    const std::size_t max_iter =
        settings.max_iterations ? settings.max_iterations : static_cast<std::size_t>(50 * (n + m) + 1000);

    Problem p;
    p.h = h_zero ? nullptr : &h;
    p.a = &a;
    p.g = Eigen::Map<const VectorXd>(qp.c.data(), n);
    p.b = Eigen::Map<const VectorXd>(qp.b.data(), m);
    p.lo = Eigen::Map<const VectorXd>(qp.lower.data(), n);
    p.up = Eigen::Map<const VectorXd>(qp.upper.data(), n);

    OracleResult res;
    VectorXd x = VectorXd::Zero(n);
    std::vector<VarStatus> st(static_cast<std::size_t>(n), VarStatus::basic);
    if (!(warm && warm->size() == static_cast<std::size_t>(n) && warm_start(p, *warm, x, st))) {
      cold_start(p, x, st);
    }

    if (max_abs_residual(p, x) > tol) {
      const OracleStatus s = phase_one(p, x, st, tol, max_iter, res.iterations);
      if (s != OracleStatus::optimal) return finish(res, s, x, VectorXd::Zero(m), st);
    }
    ensure_row_rank(p, st);

    const PhaseOutcome out = run_phase(p, x, st, 0.1 * tol, max_iter, res.iterations);
    if (out == PhaseOutcome::iteration_limit) {
      return finish(res, OracleStatus::iteration_limit, x, VectorXd::Zero(m), st);
    }
    if (out == PhaseOutcome::unbounded) {
      return finish(res, OracleStatus::numerical_failure, x, VectorXd::Zero(m), st);
    }
    regularize(p, x, st);

    const Indices f = free_set(st);
    VectorXd y = multipliers(null_space(gather_cols(a, f)), p, gather(p.gradient(x), f));
    polish(p, x, y, st, settings.refinement_steps_internal);

    const bool ok = x.allFinite() && y.allFinite() && kkt_ok(p, x, y, st, tol);
    return finish(res, ok ? OracleStatus::optimal : OracleStatus::numerical_failure, x, y, st);
  }

  static bool kkt_ok(const Problem& p, const VectorXd& x, const VectorXd& y, const std::vector<VarStatus>& st,
                     double tol) {
    if (max_abs_residual(p, x) > tol) return false;
    for (Index i = 0; i < p.n(); ++i) {
      if (x[i] < p.lo[i] - tol || x[i] > p.up[i] + tol) return false;
      long double z = p.g[i];
      if (p.h) {
        for (Index j = 0; j < p.n(); ++j) z += static_cast<long double>((*p.h)(i, j)) * x[j];
      }
      for (Index r = 0; r < p.m(); ++r) z -= static_cast<long double>((*p.a)(r, i)) * y[r];
      const auto s = st[static_cast<std::size_t>(i)];
      if (p.fixed(i)) continue;
      if (s == VarStatus::basic && std::abs(z) > tol) return false;
      if (s == VarStatus::at_lower && z < -tol) return false;
      if (s == VarStatus::at_upper && z > tol) return false;
    }
    return true;
  }

  static OracleResult finish(OracleResult& res, OracleStatus s, const VectorXd& x, const VectorXd& y,
                             const std::vector<VarStatus>& st) {
    res.status = s;
    res.x.assign(x.data(), x.data() + x.size());
    res.y.assign(y.data(), y.data() + y.size());
    res.basis.status = st;
    return res;
  }
};

ActiveSetOracle::ActiveSetOracle() : impl_(std::make_unique<Impl>()) {}
ActiveSetOracle::~ActiveSetOracle() = default;
ActiveSetOracle::ActiveSetOracle(ActiveSetOracle&&) noexcept = default;
ActiveSetOracle& ActiveSetOracle::operator=(ActiveSetOracle&&) noexcept = default;

OracleResult ActiveSetOracle::solve(const FloatQP& qp, const OracleSettings& settings,
                                    const std::optional<Basis>& warm) {
  return impl_->solve(qp, settings, warm);
}

}  // namespace qprefine
