#include <benchmark/benchmark.h>

#include <random>

#include "qprefine/active_set_oracle.hpp"
#include "qprefine/presets.hpp"
#include "qprefine/qps.hpp"
#include "qprefine/rat_lu.hpp"
#include "qprefine/refine.hpp"

using namespace qprefine;

namespace {

Rational fraction(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 9);
  return Rational(mpz_class(num(rng)), mpz_class(den(rng)));
}

DenseRatMatrix random_dense(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DenseRatMatrix m(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = fraction(rng);
    m[i][i] += Rational(100);
  }
  return m;
}

// Q = LLᵀ + I, one equality row with b = A·1, bounds [0, 2].
StandardQP random_qp(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DenseRatMatrix l(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) l[i][j] = fraction(rng);
  }
  DenseRatMatrix q(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) q[i][j] += l[i][k] * l[j][k];
    }
    q[i][i] += Rational(1);
  }
  DenseRatMatrix a(1, RatVector(n));
  RatVector c(n);
  Rational b;
  for (std::size_t j = 0; j < n; ++j) {
    a[0][j] = fraction(rng);
    c[j] = fraction(rng);
    b += a[0][j];
  }
  return make_standard_qp(RatMatrix::from_dense(q, true), RatMatrix::from_dense(a), std::move(c), {b},
                          BoundVector(n, Rational()), BoundVector(n, Rational(2)));
}

void BM_RationalLuSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseRatMatrix m = random_dense(n, 1);
  const RatVector rhs(n, Rational(1));
  for (auto _ : state) {
    const RatLU f = lu_factor(m);
    benchmark::DoNotOptimize(lu_solve(f, rhs));
  }
}
BENCHMARK(BM_RationalLuSolve)->Arg(8)->Arg(16)->Arg(32);

void BM_Residuals(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const StandardQP p = random_qp(n, 2);
  Iterate it{RatVector(n, Rational(mpz_class(1), mpz_class(3))), {Rational(mpz_class(2), mpz_class(7))}};
  for (auto _ : state) benchmark::DoNotOptimize(compute_residuals(p, it));
}
BENCHMARK(BM_Residuals)->Arg(10)->Arg(40);

void BM_OracleSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FloatQP f = round_to_float(random_qp(n, 3));
  ActiveSetOracle oracle;
  for (auto _ : state) benchmark::DoNotOptimize(oracle.solve(f, OracleSettings::reliable(), std::nullopt));
}
BENCHMARK(BM_OracleSolve)->Arg(10)->Arg(40);

void BM_RefineRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const StandardQP p = random_qp(n, 4);
  const RefineParams params = preset("s1");
  ActiveSetOracle oracle;
  for (auto _ : state) benchmark::DoNotOptimize(refine(p, params, oracle));
}
BENCHMARK(BM_RefineRandom)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_RefineFixture(benchmark::State& state, const char* file, const char* set) {
  const StandardQP p = to_standard_form(read_qps_file(std::string(QPREFINE_FIXTURE_DIR) + "/" + file));
  const RefineParams params = preset(set);
  ActiveSetOracle oracle;
  for (auto _ : state) benchmark::DoNotOptimize(refine(p, params, oracle));
}
BENCHMARK_CAPTURE(BM_RefineFixture, hs118_s2, "hs118.qps", "s2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RefineFixture, dual4s_s2, "dual4s.qps", "s2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RefineFixture, dual4s_s5, "dual4s.qps", "s5")->Unit(benchmark::kMillisecond);

void BM_ParseQps(benchmark::State& state) {
  const std::string text = read_text_file(std::string(QPREFINE_FIXTURE_DIR) + "/dual3s.qps");
  for (auto _ : state) benchmark::DoNotOptimize(parse_qps(text));
}
BENCHMARK(BM_ParseQps);

}  // namespace

BENCHMARK_MAIN();
