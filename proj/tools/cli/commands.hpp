#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qprefine/certificate.hpp"
#include "qprefine/qps.hpp"
#include "qprefine/refine.hpp"
#include "qprefine/report.hpp"

namespace qprefine::cli {

struct Overrides {
  std::optional<std::string> alpha;
  std::optional<std::size_t> ratfac_minstalls;
  std::optional<std::size_t> l_max;
  std::optional<std::size_t> k_max;
  std::optional<std::string> eps_p;
  std::optional<std::string> eps_d;
  std::optional<std::string> eps_s;
};

struct RunConfig {
  std::string preset = "s1";
  Overrides overrides;
  ReportFormat format = ReportFormat::human;
  /// Directory for reports and certificates; stdout when empty.
  std::filesystem::path out_dir;
  /// Certificate path for solve; defaults to <out_dir>/<name>.cert.
  std::filesystem::path certificate;
  std::size_t jobs = 1;
  std::uint64_t seed = 1;
};

/// The preset with overrides applied. Throws std::invalid_argument.
RefineParams effective_params(const RunConfig& config);

struct SolveRun {
  GeneralQP problem;
  StandardQP standard;
  RefineOutcome outcome;
  SolveReport report;
  /// Set when the outcome is exact.
  std::optional<Certificate> certificate;
};

/// Parses, solves and builds the report. Throws QpsError and I/O errors.
SolveRun solve_file(const std::filesystem::path& path, const RefineParams& params);

/// Exit status: 0 for any solver outcome, 2 for parse, I/O or usage errors.
int cmd_solve(const std::filesystem::path& path, const RunConfig& config, std::ostream& out, std::ostream& err);

struct CheckTolerances {
  std::string primal = "0";
  std::string dual = "0";
  std::string slack = "0";
};

/// Exit status: 0 when every residual is within tolerance, 1 when one is
/// not, 2 on parse, I/O or name mismatch errors.
int cmd_check(const std::filesystem::path& problem, const std::filesystem::path& certificate,
              const CheckTolerances& tol, std::ostream& out, std::ostream& err);

/// exp(mean(log(v + shift))) - shift.
double shifted_geometric_mean(const std::vector<double>& values, double shift);

struct BenchResult {
  std::vector<SolveReport> rows;
  double mean_time = 0.0;
  double sgm_time = 0.0;
  double mean_iterations = 0.0;
  double sgm_iterations = 0.0;
};

/// Solves every .qps and .mps file in dir, sorted by file name, with up to
/// `jobs` workers. Per-instance failures become rows with status "error".
BenchResult run_bench(const std::filesystem::path& dir, const RefineParams& params, std::size_t jobs);

std::string write_bench(const BenchResult& r, ReportFormat format);

int cmd_bench(const std::filesystem::path& dir, const RunConfig& config, std::ostream& out, std::ostream& err);

/// Random strictly convex QP with n columns and m equality rows, feasible
/// by construction, small integer data and a mix of finite and infinite
/// bounds.
GeneralQP random_qp(std::uint64_t seed, std::size_t n, std::size_t m);

}  // namespace qprefine::cli
