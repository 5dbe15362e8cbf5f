#include "qprefine/model.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "qprefine/timing.hpp"

namespace qprefine {

namespace {

void check_bounds(const BoundVector& lo, const BoundVector& up, const char* what) {
  if (lo.size() != up.size()) throw std::invalid_argument(std::string(what) + ": bound vector size mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] && up[i] && *lo[i] > *up[i]) {
      throw std::invalid_argument(std::string(what) + " " + std::to_string(i) + ": lower bound above upper bound");
    }
  }
}

std::vector<std::string> default_names(const char* prefix, std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) names.push_back(prefix + std::to_string(i + 1));
  return names;
}

}  // namespace

void GeneralQP::validate() const {
  const std::size_t n = num_cols();
  const std::size_t m = num_rows();
  if (q.rows() != n || q.cols() != n) throw std::invalid_argument("GeneralQP: Q must be n x n");
  if (a.rows() != m || a.cols() != n) throw std::invalid_argument("GeneralQP: A must be m x n");
  if (col_lower.size() != n || col_upper.size() != n) throw std::invalid_argument("GeneralQP: column bound size");
  if (row_upper.size() != m) throw std::invalid_argument("GeneralQP: row bound size");
  if (!col_names.empty() && col_names.size() != n) throw std::invalid_argument("GeneralQP: column name count");
  if (!row_names.empty() && row_names.size() != m) throw std::invalid_argument("GeneralQP: row name count");
  for (const auto& e : q.entries()) {
    if (q.entry(e.col, e.row) != e.value) throw std::invalid_argument("GeneralQP: Q is not symmetric");
  }
  check_bounds(row_lower, row_upper, "row");
  check_bounds(col_lower, col_upper, "column");
}

void StandardQP::validate() const {
  if (!q || !a) throw std::invalid_argument("StandardQP: missing Q or A");
  if (q->rows() != n() || q->cols() != n()) throw std::invalid_argument("StandardQP: Q must be n x n");
  if (a->rows() != m() || a->cols() != n()) throw std::invalid_argument("StandardQP: A must be m x n");
  if (lower.size() != n() || upper.size() != n()) throw std::invalid_argument("StandardQP: bound size");
  check_bounds(lower, upper, "variable");
}

StandardQP make_standard_qp(RatMatrix q, RatMatrix a, RatVector c, RatVector b, BoundVector lower,
                            BoundVector upper, Rational objective_constant) {
  StandardQP p;
  p.name = "QP";
  p.num_original_cols = c.size();
  p.col_names = default_names("x", c.size());
  p.row_names = default_names("r", b.size());
  p.q = std::make_shared<const RatMatrix>(std::move(q));
  p.a = std::make_shared<const RatMatrix>(std::move(a));
  p.c = std::move(c);
  p.b = std::move(b);
  p.lower = std::move(lower);
  p.upper = std::move(upper);
  p.objective_constant = std::move(objective_constant);
  p.validate();
  return p;
}

StandardQP to_standard_form(const GeneralQP& g) {
  g.validate();
  const std::size_t n = g.num_cols();
  const std::size_t m = g.num_rows();
  StandardQP p;
  p.name = g.name;
  p.num_original_cols = n;
  p.col_names = g.col_names.empty() ? default_names("x", n) : g.col_names;
  p.row_names = g.row_names.empty() ? default_names("r", m) : g.row_names;
  p.c = g.c;
  p.lower = g.col_lower;
  p.upper = g.col_upper;
  p.objective_constant = g.objective_constant;
  p.b.assign(m, Rational());

  std::vector<RatEntry> entries = g.a.entries();
  std::size_t next = n;
  for (std::size_t i = 0; i < m; ++i) {
    const bool equality = g.row_lower[i] && g.row_upper[i] && *g.row_lower[i] == *g.row_upper[i];
    if (equality) {
      p.b[i] = *g.row_lower[i];
      continue;
    }
    entries.push_back({i, next, Rational(-1)});
    p.slack_map.push_back({next, i});
    p.c.emplace_back();
    p.lower.push_back(g.row_lower[i]);
    p.upper.push_back(g.row_upper[i]);
    p.col_names.push_back("slack_" + p.row_names[i]);
    ++next;
  }
  p.a = std::make_shared<const RatMatrix>(RatMatrix::from_entries(m, next, std::move(entries)));
  std::vector<RatEntry> q_entries = g.q.entries();
  p.q = std::make_shared<const RatMatrix>(RatMatrix::from_entries(next, next, std::move(q_entries), true));
  p.validate();
  return p;
}

GeneralSolution recover_solution(const StandardQP& p, const Iterate& it) {
  if (it.x.size() != p.n() || it.y.size() != p.m()) {
    throw std::invalid_argument("recover_solution: dimension mismatch");
  }
  GeneralSolution s;
  s.x.assign(it.x.begin(), it.x.begin() + static_cast<std::ptrdiff_t>(p.num_original_cols));
  s.row_duals = it.y;
  s.objective = objective_exact(p, it.x);
  return s;
}

Iterate lift_to_standard(const StandardQP& p, const RatVector& x, const RatVector& row_duals) {
  if (x.size() != p.num_original_cols || row_duals.size() != p.m()) {
    throw std::invalid_argument("lift_to_standard: dimension mismatch");
  }
  Iterate it;
  it.x = x;
  it.x.resize(p.n());
  it.y = row_duals;
  for (const auto& link : p.slack_map) {
    Rational s;
    for (std::size_t k = p.a->row_begin(link.row); k < p.a->row_begin(link.row + 1); ++k) {
      const auto& e = p.a->entries()[k];
      if (e.col < p.num_original_cols) s += e.value * x[e.col];
    }
    it.x[link.column] = s;
  }
  return it;
}

namespace {

std::shared_ptr<const DenseMatrix> round_matrix(const RatMatrix& m, std::size_t& clamped) {
  auto d = std::make_shared<DenseMatrix>();
  d->rows = m.rows();
  d->cols = m.cols();
  d->data.assign(m.rows() * m.cols(), 0.0);
  for (const auto& e : m.entries()) {
    const auto r = round_to_nearest_double(e.value);
    clamped += r.clamped ? 1 : 0;
    (*d)(e.row, e.col) = r.value;
  }
  return d;
}

std::vector<double> round_vector(const RatVector& v, std::size_t& clamped) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto r = round_to_nearest_double(v[i]);
    clamped += r.clamped ? 1 : 0;
    out[i] = r.value;
  }
  return out;
}

std::vector<double> round_bounds(const BoundVector& v, double infinity, std::size_t& clamped) {
  std::vector<double> out(v.size(), infinity);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    const auto r = round_to_nearest_double(*v[i]);
    clamped += r.clamped ? 1 : 0;
    out[i] = r.value;
  }
  return out;
}

}  // namespace

FloatQP round_to_float(const StandardQP& p, const FloatQP* reuse) {
  RationalScope scope;
  FloatQP f;
  f.q_source = p.q;
  f.a_source = p.a;
  if (reuse && reuse->q_source == p.q && reuse->q) {
    f.q = reuse->q;
  } else {
    f.q = round_matrix(*p.q, f.clamped);
  }
  if (reuse && reuse->a_source == p.a && reuse->a) {
    f.a = reuse->a;
  } else {
    f.a = round_matrix(*p.a, f.clamped);
  }
  f.c = round_vector(p.c, f.clamped);
  f.b = round_vector(p.b, f.clamped);
  f.lower = round_bounds(p.lower, -INFINITY, f.clamped);
  f.upper = round_bounds(p.upper, INFINITY, f.clamped);
  return f;
}

namespace {

Rational quadratic_value(const RatMatrix& q, const RatVector& c, const Rational& constant, const RatVector& x) {
  if (x.size() != c.size()) throw std::invalid_argument("objective_exact: dimension mismatch");
  Rational quad;
  for (const auto& e : q.entries()) {
    if (!x[e.row].is_zero() && !x[e.col].is_zero()) quad += e.value * x[e.row] * x[e.col];
  }
  return quad / Rational(2) + dot(c, x) + constant;
}

}  // namespace

Rational objective_exact(const StandardQP& p, const RatVector& x) {
  RationalScope scope;
  return quadratic_value(*p.q, p.c, p.objective_constant, x);
}

Rational objective_exact(const GeneralQP& g, const RatVector& x) {
  RationalScope scope;
  return quadratic_value(g.q, g.c, g.objective_constant, x);
}

}  // namespace qprefine
