#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qprefine/presets.hpp"

namespace cli = qprefine::cli;

int main(int argc, char** argv) {
  CLI::App app{"Exact and high-precision convex QP solving by iterative refinement"};
  app.require_subcommand(1);

  cli::RunConfig config;
  std::string format = "human";
  std::string file;
  std::string dir;
  std::string certificate;
  cli::CheckTolerances check_tol;
  std::size_t gen_n = 5;
  std::size_t gen_m = 2;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--preset", config.preset, "Parameter set s1..s5")
        ->check(CLI::IsMember(qprefine::preset_names()));
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "human"}));
    sub->add_option("--out", config.out_dir, "Output directory");
    sub->add_option("--maxscaleincrement", config.overrides.alpha, "Scaling increment limit alpha");
    sub->add_option("--ratfac-minstalls", config.overrides.ratfac_minstalls,
                    "Stalled refinements before a rational basis solve");
    sub->add_option("--max-backstepping", config.overrides.l_max, "Backsteps per refinement");
    sub->add_option("--refinement-limit", config.overrides.k_max, "Maximum number of refinements");
    sub->add_option("--primal-tol", config.overrides.eps_p, "Primal tolerance");
    sub->add_option("--dual-tol", config.overrides.eps_d, "Dual tolerance");
    sub->add_option("--slack-tol", config.overrides.eps_s, "Complementarity tolerance");
  };

  auto* solve = app.add_subcommand("solve", "Solve one QPS instance");
  solve->add_option("file", file, "QPS file")->required();
  add_common(solve);
  solve->add_option("--certificate", config.certificate, "Write the exact certificate here");

  auto* check = app.add_subcommand("check", "Verify a solution certificate in exact arithmetic");
  check->add_option("file", file, "QPS file")->required();
  check->add_option("certificate", certificate, "Certificate file")->required();
  check->add_option("--primal-tol", check_tol.primal, "Accepted primal violation");
  check->add_option("--dual-tol", check_tol.dual, "Accepted dual violation");
  check->add_option("--slack-tol", check_tol.slack, "Accepted complementarity violation");

  auto* bench = app.add_subcommand("bench", "Solve every instance in a directory");
  bench->add_option("dir", dir, "Directory of QPS files")->required();
  add_common(bench);
  bench->add_option("--jobs", config.jobs, "Concurrent workers")->check(CLI::PositiveNumber);

  auto* presets = app.add_subcommand("presets", "Print the parameter sets");

  auto* generate = app.add_subcommand("generate", "Write a random strictly convex QP in QPS format");
  generate->add_option("--seed", config.seed, "Random seed");
  generate->add_option("-n,--cols", gen_n, "Columns");
  generate->add_option("-m,--rows", gen_m, "Rows");
  generate->add_option("--output", file, "Output file (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    config.format = qprefine::parse_report_format(format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (solve->parsed()) return cli::cmd_solve(file, config, std::cout, std::cerr);
  if (check->parsed()) return cli::cmd_check(file, certificate, check_tol, std::cout, std::cerr);
  if (bench->parsed()) return cli::cmd_bench(dir, config, std::cout, std::cerr);
  if (presets->parsed()) {
    std::cout << qprefine::describe_presets();
    return 0;
  }
  if (generate->parsed()) {
    const std::string text = qprefine::write_qps(cli::random_qp(config.seed, gen_n, gen_m));
    if (file.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(file);
      if (!(f << text)) {
        std::cerr << "error: cannot write " << file << '\n';
        return 2;
      }
    }
    return 0;
  }
  return 2;
}
