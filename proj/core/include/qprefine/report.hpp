#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qprefine/refine.hpp"

namespace qprefine {

enum class ReportFormat { json, csv_row, human };

/// Throws std::invalid_argument for anything but "json", "csv" or "human".
ReportFormat parse_report_format(std::string_view text);

struct ReportRow {
  std::size_t k = 0;
  Rational delta;
  Rational delta_p;
  Rational delta_d;
  Rational delta_s;
  std::string oracle_status;
  bool basis_changed = false;
  bool ratfac = false;
  std::size_t backsteps = 0;
  std::size_t resolves = 0;
  std::size_t oracle_iterations = 0;
};

struct SolveReport {
  std::string name;
  std::string status;
  std::size_t refinements = 0;
  std::size_t backsteps = 0;
  std::size_t resolves = 0;
  std::size_t oracle_iterations = 0;
  std::size_t rational_solves = 0;
  Rational delta_p;
  Rational delta_d;
  Rational delta_s;
  Rational objective_exact;
  double objective_double = 0.0;
  double time_seconds = 0.0;
  double rational_time_fraction = 0.0;
  Rational measured_sigma;
  std::vector<ReportRow> iterations;
  /// "key: value" pairs of the effective configuration.
  std::vector<std::pair<std::string, std::string>> config;
  /// Set for rows that failed before refinement, such as parse errors.
  std::string error;
};

SolveReport make_report(const std::string& name, const StandardQP& p, const RefineOutcome& outcome,
                        const RefineParams& params);

/// A report row for an instance that could not be solved at all.
SolveReport make_error_report(const std::string& name, const std::string& message);

/// Column names of the csv-row format, comma separated.
std::string csv_header();

std::string write_report(const SolveReport& r, ReportFormat format);

}  // namespace qprefine
