#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qprefine/active_set_oracle.hpp"
#include "qprefine/presets.hpp"
#include "qprefine/residuals.hpp"

namespace qprefine::cli {

RefineParams effective_params(const RunConfig& config) {
  RefineParams p = preset(config.preset);
  const Overrides& o = config.overrides;
  if (o.alpha) p.alpha = parse_exact_number(*o.alpha);
  if (o.ratfac_minstalls) p.ratfac_minstalls = *o.ratfac_minstalls;
  if (o.l_max) p.l_max = *o.l_max;
  if (o.k_max) p.k_max = *o.k_max;
  if (o.eps_p) p.eps_p = parse_exact_number(*o.eps_p);
  if (o.eps_d) p.eps_d = parse_exact_number(*o.eps_d);
  if ((o.eps_p || o.eps_d) && !o.eps_s) p.eps_s = p.eps_p * p.eps_d;
  if (o.eps_s) p.eps_s = parse_exact_number(*o.eps_s);
  if (o.alpha || o.ratfac_minstalls || o.l_max || o.k_max || o.eps_p || o.eps_d || o.eps_s) {
    p.preset += "+overrides";
  }
  p.validate();
  return p;
}

SolveRun solve_file(const std::filesystem::path& path, const RefineParams& params) {
  SolveRun run;
  run.problem = read_qps_file(path);
  if (run.problem.name.empty()) run.problem.name = path.stem().string();
  run.standard = to_standard_form(run.problem);
  ActiveSetOracle oracle;
  run.outcome = refine(run.standard, params, oracle);
  run.report = make_report(run.problem.name, run.standard, run.outcome, params);
  if (run.outcome.status == TerminationStatus::exact) {
    run.certificate = make_certificate(run.problem, recover_solution(run.standard, run.outcome.iterate));
  }
  return run;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

std::string extension(ReportFormat f) {
  switch (f) {
    case ReportFormat::json:
      return ".json";
    case ReportFormat::csv_row:
      return ".csv";
    case ReportFormat::human:
      return ".txt";
  }
  return ".txt";
}

}  // namespace

int cmd_solve(const std::filesystem::path& path, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const RefineParams params = effective_params(config);
    SolveRun run = solve_file(path, params);
    std::string text = write_report(run.report, config.format);
    if (config.format == ReportFormat::csv_row) text = csv_header() + "\n" + text;
    const std::string stem = path.stem().string();
    if (config.out_dir.empty()) {
      out << text;
    } else {
      write_file(config.out_dir / (stem + extension(config.format)), text);
    }
    if (run.certificate) {
      std::filesystem::path cert = config.certificate;
      if (cert.empty() && !config.out_dir.empty()) cert = config.out_dir / (stem + ".cert");
      if (!cert.empty()) write_file(cert, write_certificate(*run.certificate));
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int cmd_check(const std::filesystem::path& problem, const std::filesystem::path& certificate,
              const CheckTolerances& tol, std::ostream& out, std::ostream& err) {
  try {
    const Rational tp = parse_exact_number(tol.primal);
    const Rational td = parse_exact_number(tol.dual);
    const Rational ts = parse_exact_number(tol.slack);
    const GeneralQP g = read_qps_file(problem);
    const Certificate cert = parse_certificate(read_text_file(certificate));
    const GeneralSolution s = align_certificate(g, cert);
    const StandardQP p = to_standard_form(g);
    const KktCheck check = verify_kkt_exact(p, lift_to_standard(p, s.x, s.row_duals));
    const Residuals& r = check.residuals;
    out << "instance   " << (g.name.empty() ? problem.stem().string() : g.name) << '\n'
        << "objective  " << s.objective.to_fraction_string() << '\n'
        << "delta_p    " << r.delta_p.to_fraction_string() << " (" << to_decimal_string(r.delta_p) << ")\n"
        << "delta_d    " << r.delta_d.to_fraction_string() << " (" << to_decimal_string(r.delta_d) << ")\n"
        << "delta_s    " << r.delta_s.to_fraction_string() << " (" << to_decimal_string(r.delta_s) << ")\n";
    const bool ok = r.delta_p <= tp && r.delta_d <= td && r.delta_s <= ts;
    out << "result     " << (ok ? "accepted" : "rejected") << '\n';
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

double shifted_geometric_mean(const std::vector<double>& values, double shift) {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += std::log(v + shift);
  return std::exp(s / static_cast<double>(values.size())) - shift;
}

BenchResult run_bench(const std::filesystem::path& dir, const RefineParams& params, std::size_t jobs) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const auto ext = e.path().extension().string();
    if (e.is_regular_file() && (ext == ".qps" || ext == ".QPS" || ext == ".mps" || ext == ".MPS")) {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());

  BenchResult result;
  result.rows.resize(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        result.rows[i] = solve_file(files[i], params).report;
      } catch (const std::exception& e) {
        result.rows[i] = make_error_report(files[i].stem().string(), e.what());
      }
    }
  };
  const std::size_t width = std::max<std::size_t>(1, std::min(jobs, files.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < width; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<double> times, iters;
  for (const auto& r : result.rows) {
    if (!r.error.empty()) continue;
    times.push_back(r.time_seconds);
    iters.push_back(static_cast<double>(r.oracle_iterations));
  }
  if (!times.empty()) {
    double st = 0.0, si = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      st += times[i];
      si += iters[i];
    }
    result.mean_time = st / static_cast<double>(times.size());
    result.mean_iterations = si / static_cast<double>(iters.size());
    result.sgm_time = shifted_geometric_mean(times, 0.01);
    result.sgm_iterations = shifted_geometric_mean(iters, 1.0);
  }
  return result;
}

std::string write_bench(const BenchResult& r, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::json) {
    nlohmann::ordered_json j;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) rows.push_back(nlohmann::ordered_json::parse(write_report(row, format)));
    j["instances"] = std::move(rows);
    j["summary"] = {{"count", r.rows.size()},
                    {"mean_time_seconds", r.mean_time},
                    {"shifted_geometric_mean_time_seconds", r.sgm_time},
                    {"time_shift", 0.01},
                    {"mean_oracle_iterations", r.mean_iterations},
                    {"shifted_geometric_mean_oracle_iterations", r.sgm_iterations},
                    {"iteration_shift", 1.0}};
    os << j.dump(2) << '\n';
    return os.str();
  }
  if (format == ReportFormat::csv_row) {
    os << csv_header() << '\n';
    for (const auto& row : r.rows) os << write_report(row, format);
  } else {
    os << "instance              status             time[s]   rat%    iter  tolerance  ref  back  res\n";
    for (const auto& row : r.rows) {
      char line[256];
      std::snprintf(line, sizeof line, "%-21s %-18s %8.3f %6.2f %7zu  %-9s %4zu %5zu %4zu\n", row.name.c_str(),
                    row.status.c_str(), row.time_seconds, 100 * row.rational_time_fraction, row.oracle_iterations,
                    to_decimal_string(max(row.delta_p, row.delta_d), 2).c_str(), row.refinements, row.backsteps,
                    row.resolves);
      os << line;
    }
  }
  if (!r.rows.empty()) {
    os << "# mean time " << r.mean_time << " s, shifted geometric mean (shift 0.01) " << r.sgm_time << " s\n"
       << "# mean oracle iterations " << r.mean_iterations << ", shifted geometric mean (shift 1) "
       << r.sgm_iterations << '\n';
  }
  return os.str();
}

int cmd_bench(const std::filesystem::path& dir, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!std::filesystem::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
    const RefineParams params = effective_params(config);
    const BenchResult r = run_bench(dir, params, config.jobs);
    const std::string text = write_bench(r, config.format);
    if (config.out_dir.empty()) {
      out << text;
    } else {
      write_file(config.out_dir / ("bench" + extension(config.format)), text);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

GeneralQP random_qp(std::uint64_t seed, std::size_t n, std::size_t m) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<int> kind(0, 3);
  GeneralQP g;
  g.name = "RAND" + std::to_string(seed);
  for (std::size_t j = 0; j < n; ++j) g.col_names.push_back("X" + std::to_string(j + 1));
  for (std::size_t i = 0; i < m; ++i) g.row_names.push_back("C" + std::to_string(i + 1));

  // Q = LLᵀ + I
  std::vector<std::vector<int>> l(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) l[i][j] = small(rng);
  }
  DenseRatMatrix q(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      long s = i == j ? 1 : 0;
      for (std::size_t k = 0; k < n; ++k) s += l[i][k] * l[j][k];
      q[i][j] = Rational(s);
    }
  }
  g.q = RatMatrix::from_dense(q, true);
  for (std::size_t j = 0; j < n; ++j) g.c.push_back(Rational(small(rng) * 2 + 1));

  RatVector x0;
  g.col_lower.resize(n);
  g.col_upper.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    x0.push_back(Rational(small(rng)));
    switch (kind(rng)) {
      case 0:
        break;
      case 1:
        g.col_lower[j] = x0[j] - Rational(1 + kind(rng));
        break;
      case 2:
        g.col_upper[j] = x0[j] + Rational(1 + kind(rng));
        break;
      default:
        g.col_lower[j] = x0[j] - Rational(kind(rng));
        g.col_upper[j] = x0[j] + Rational(1 + kind(rng));
    }
  }
  DenseRatMatrix a(m, RatVector(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(small(rng));
  }
  g.a = RatMatrix::from_dense(a);
  const RatVector b = g.a.multiply(x0);
  g.row_lower.assign(b.begin(), b.end());
  g.row_upper.assign(b.begin(), b.end());
  for (std::size_t i = 0; i < m; ++i) {
    if (kind(rng) == 0) g.row_lower[i] = b[i] - Rational(2);
    if (kind(rng) == 1) g.row_upper[i].reset();
  }
  g.validate();
  return g;
}

}  // namespace qprefine::cli
