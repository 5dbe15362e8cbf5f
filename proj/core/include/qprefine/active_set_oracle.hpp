#pragma once

#include <memory>

#include "qprefine/oracle.hpp"

namespace qprefine {

/// Dense primal active-set solver for convex QPs with equality rows and
/// box bounds.
///
/// Caches the dense Q and A between calls; the cache is refreshed whenever
/// a problem with different matrix objects arrives.
class ActiveSetOracle final : public QpOracle {
 public:
  ActiveSetOracle();
  ~ActiveSetOracle() override;
  ActiveSetOracle(ActiveSetOracle&&) noexcept;
  ActiveSetOracle& operator=(ActiveSetOracle&&) noexcept;

  OracleResult solve(const FloatQP& qp, const OracleSettings& settings,
                     const std::optional<Basis>& warm) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qprefine
