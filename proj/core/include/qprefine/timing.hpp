#pragma once

#include <chrono>

namespace qprefine {

/// Per-thread accumulator of wall time spent in exact arithmetic.
///
/// Nested scopes are counted once.
class RationalScope {
 public:
  RationalScope();
  ~RationalScope();
  RationalScope(const RationalScope&) = delete;
  RationalScope& operator=(const RationalScope&) = delete;

  static double seconds();
  static void reset();

 private:
  bool outermost_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace qprefine
