#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qprefine/model.hpp"

namespace qprefine {

class QpsError : public std::runtime_error {
 public:
  QpsError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses an exact numeric literal: decimal or scientific ("-1.5e-3"), or
/// the fraction extension "p/q". Throws std::invalid_argument.
Rational parse_exact_number(std::string_view text);

/// Reads a QPS document into a GeneralQP.
///
/// QUADOBJ lists the lower triangle of Q with diagonal entries taken as
/// Q_ii; QMATRIX and QSECTION list the whole matrix. The first N row is the
/// objective and later N rows are dropped. Numbers are parsed exactly; the
/// tokens Inf / Infinity (any case, optional sign) denote infinite values.
/// An UP bound below zero on a variable whose lower bound was not given
/// keeps the lower bound 0 and adds a warning. Throws QpsError.
GeneralQP parse_qps(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Throws QpsError for malformed content and std::runtime_error for I/O.
GeneralQP read_qps_file(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

/// Free-format QPS. Values without a finite decimal expansion are written
/// as "p/q" so that parse_qps(write_qps(g)) reproduces g exactly.
std::string write_qps(const GeneralQP& g);

/// Exact decimal text when one exists, otherwise "p/q".
std::string format_exact(const Rational& r);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace qprefine
