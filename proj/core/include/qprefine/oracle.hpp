#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qprefine/model.hpp"

namespace qprefine {

enum class OracleMode { fast, reliable };

struct OracleSettings {
  double termination_tolerance = 1.1105e-9;
  /// 0 selects a size-dependent default.
  std::size_t max_iterations = 0;
  std::size_t refinement_steps_internal = 10;
  OracleMode mode = OracleMode::reliable;

  static OracleSettings fast() { return {1e-3, 0, 0, OracleMode::fast}; }
  static OracleSettings reliable() { return {1.1105e-9, 0, 10, OracleMode::reliable}; }
};

enum class VarStatus : std::uint8_t { basic, at_lower, at_upper };

struct Basis {
  std::vector<VarStatus> status;

  std::size_t size() const { return status.size(); }
  friend bool operator==(const Basis&, const Basis&) = default;
};

enum class OracleStatus { optimal, iteration_limit, numerical_failure };

std::string_view to_string(OracleStatus s);

struct OracleResult {
  OracleStatus status = OracleStatus::numerical_failure;
  std::vector<double> x;
  std::vector<double> y;
  Basis basis;
  std::size_t iterations = 0;
};

/// A floating-point QP solver used as a black box by the refinement loop.
///
/// Instances may hold state between calls and must not be shared between
/// threads.
class QpOracle {
 public:
  virtual ~QpOracle() = default;
  virtual OracleResult solve(const FloatQP& qp, const OracleSettings& settings,
                             const std::optional<Basis>& warm) = 0;
};

}  // namespace qprefine
