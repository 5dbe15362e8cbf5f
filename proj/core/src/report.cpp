#include "qprefine/report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qprefine/presets.hpp"

namespace qprefine {

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::json;
  if (text == "csv" || text == "csv-row") return ReportFormat::csv_row;
  if (text == "human") return ReportFormat::human;
  throw std::invalid_argument("unknown report format '" + std::string(text) + "'");
}

SolveReport make_report(const std::string& name, const StandardQP& p, const RefineOutcome& outcome,
                        const RefineParams& params) {
  SolveReport r;
  r.name = name;
  r.status = std::string(to_string(outcome.status));
  r.refinements = outcome.refinements;
  r.backsteps = outcome.backsteps;
  r.resolves = outcome.resolves;
  r.oracle_iterations = outcome.oracle_iterations;
  r.rational_solves = outcome.rational_solves;
  r.delta_p = outcome.residuals.delta_p;
  r.delta_d = outcome.residuals.delta_d;
  r.delta_s = outcome.residuals.delta_s;
  if (outcome.iterate.x.size() == p.n()) r.objective_exact = objective_exact(p, outcome.iterate.x);
  r.objective_double = to_double(r.objective_exact);
  r.time_seconds = outcome.wall_seconds;
  r.rational_time_fraction = outcome.wall_seconds > 0 ? outcome.rational_seconds / outcome.wall_seconds : 0.0;
  r.measured_sigma = outcome.measured_sigma;
  for (const auto& l : outcome.log) {
    ReportRow row;
    row.k = l.k;
    row.delta = l.delta;
    row.delta_p = l.delta_p;
    row.delta_d = l.delta_d;
    row.delta_s = l.delta_s;
    row.oracle_status = l.solved ? std::string(to_string(l.oracle_status)) : "";
    row.basis_changed = l.basis_changed;
    row.ratfac = l.ratfac;
    row.backsteps = l.backsteps;
    row.resolves = l.resolves;
    row.oracle_iterations = l.oracle_iterations;
    r.iterations.push_back(std::move(row));
  }
  std::istringstream cfg(describe_params(params));
  std::string line;
  while (std::getline(cfg, line)) {
    const auto colon = line.find(": ");
    if (colon != std::string::npos) r.config.emplace_back(line.substr(0, colon), line.substr(colon + 2));
  }
  return r;
}

SolveReport make_error_report(const std::string& name, const std::string& message) {
  SolveReport r;
  r.name = name;
  r.status = "error";
  r.error = message;
  return r;
}

namespace {

std::string exact(const Rational& v) { return v.to_fraction_string(); }

std::string decimal(const Rational& v) { return to_decimal_string(v, 6); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

std::string to_json(const SolveReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["status"] = r.status;
  if (!r.error.empty()) j["error"] = r.error;
  j["refinements"] = r.refinements;
  j["backsteps"] = r.backsteps;
  j["resolves"] = r.resolves;
  j["oracle_iterations"] = r.oracle_iterations;
  j["rational_solves"] = r.rational_solves;
  j["delta_p"] = exact(r.delta_p);
  j["delta_d"] = exact(r.delta_d);
  j["delta_s"] = exact(r.delta_s);
  j["delta_p_decimal"] = decimal(r.delta_p);
  j["delta_d_decimal"] = decimal(r.delta_d);
  j["delta_s_decimal"] = decimal(r.delta_s);
  j["objective_exact"] = exact(r.objective_exact);
  j["objective_double"] = r.objective_double;
  j["time_seconds"] = r.time_seconds;
  j["rational_time_fraction"] = r.rational_time_fraction;
  j["measured_sigma"] = exact(r.measured_sigma);
  j["measured_sigma_decimal"] = decimal(r.measured_sigma);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.iterations) {
    nlohmann::ordered_json o;
    o["k"] = row.k;
    o["delta"] = exact(row.delta);
    o["delta_p"] = exact(row.delta_p);
    o["delta_d"] = exact(row.delta_d);
    o["delta_s"] = exact(row.delta_s);
    o["oracle_status"] = row.oracle_status;
    o["basis_changed"] = row.basis_changed;
    o["ratfac"] = row.ratfac;
    o["backsteps"] = row.backsteps;
    o["resolves"] = row.resolves;
    o["oracle_iterations"] = row.oracle_iterations;
    rows.push_back(std::move(o));
  }
  j["iterations"] = std::move(rows);
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  j["config"] = std::move(cfg);
  return j.dump(2) + "\n";
}

std::string to_csv(const SolveReport& r) {
  const Rational tol = max(r.delta_p, r.delta_d);
  std::ostringstream os;
  os << csv_field(r.name) << ',' << r.status << ',' << fixed(r.time_seconds, 6) << ','
     << fixed(r.rational_time_fraction, 4) << ',' << r.oracle_iterations << ',' << decimal(tol) << ','
     << r.refinements << ',' << r.backsteps << ',' << r.resolves << ',' << exact(r.delta_p) << ','
     << exact(r.delta_d) << ',' << exact(r.delta_s) << ',' << exact(r.objective_exact) << ','
     << fixed(r.objective_double, 17) << ',' << decimal(r.measured_sigma) << ',' << csv_field(r.error) << '\n';
  return os.str();
}

std::string to_human(const SolveReport& r) {
  std::ostringstream os;
  os << "instance     " << r.name << '\n' << "status       " << r.status << '\n';
  if (!r.error.empty()) {
    os << "error        " << r.error << '\n';
    return os.str();
  }
  os << "objective    " << exact(r.objective_exact) << " (~" << fixed(r.objective_double, 17) << ")\n"
     << "delta_p      " << decimal(r.delta_p) << '\n'
     << "delta_d      " << decimal(r.delta_d) << '\n'
     << "delta_s      " << decimal(r.delta_s) << '\n'
     << "refinements  " << r.refinements << "  backsteps " << r.backsteps << "  resolves " << r.resolves
     << "  oracle iterations " << r.oracle_iterations << '\n'
     << "sigma        " << decimal(r.measured_sigma) << '\n'
     << "time         " << fixed(r.time_seconds, 4) << " s (" << fixed(100 * r.rational_time_fraction, 3)
     << "% rational)\n";
  if (!r.iterations.empty()) {
    os << "\n  k  delta        delta_p      delta_d      delta_s      oracle            basis\n";
    for (const auto& row : r.iterations) {
      os << std::setw(3) << row.k << "  " << std::left << std::setw(12) << (row.oracle_status.empty() ? std::string("-") : decimal(row.delta)) << ' '
         << std::setw(12) << decimal(row.delta_p) << ' ' << std::setw(12) << decimal(row.delta_d) << ' '
         << std::setw(12) << decimal(row.delta_s) << ' ' << std::setw(17)
         << (row.ratfac ? "ratfac" : row.oracle_status) << ' ' << (row.basis_changed ? "changed" : "-")
         << std::right << '\n';
    }
  }
  return os.str();
}

}  // namespace

std::string csv_header() {
  return "name,status,time_seconds,rational_time_fraction,oracle_iterations,tolerance,refinements,backsteps,"
         "resolves,delta_p,delta_d,delta_s,objective_exact,objective_double,measured_sigma,error";
}

std::string write_report(const SolveReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::json:
      return to_json(r);
    case ReportFormat::csv_row:
      return to_csv(r);
    case ReportFormat::human:
      return to_human(r);
  }
  return {};
}

}  // namespace qprefine
