#pragma once

#include <cstddef>
#include <vector>

#include "qprefine/oracle.hpp"

namespace qprefine::testing {

/// Solves the KKT system of the float problem exactly, treating every
/// variable as free, then adds fixed offsets to the returned x and y. The
/// offsets model an oracle whose answers carry errors at a known scale.
class InjectingOracle final : public QpOracle {
 public:
  InjectingOracle(std::vector<double> x_offset, std::vector<double> y_offset);

  OracleResult solve(const FloatQP& qp, const OracleSettings& settings, const std::optional<Basis>& warm) override;

  std::size_t calls() const { return calls_; }

 private:
  std::vector<double> x_offset_;
  std::vector<double> y_offset_;
  std::size_t calls_ = 0;
};

/// Replays scripted statuses, then delegates to another oracle.
class ScriptedFailureOracle final : public QpOracle {
 public:
  ScriptedFailureOracle(QpOracle& inner, std::vector<OracleStatus> script);

  OracleResult solve(const FloatQP& qp, const OracleSettings& settings, const std::optional<Basis>& warm) override;

  const std::vector<double>& tolerances_seen() const { return tolerances_; }

 private:
  QpOracle& inner_;
  std::vector<OracleStatus> script_;
  std::size_t next_ = 0;
  std::vector<double> tolerances_;
};

}  // namespace qprefine::testing
