#include "qprefine/timing.hpp"

namespace qprefine {

namespace {
thread_local int depth = 0;
thread_local double accumulated = 0.0;
}  // namespace

RationalScope::RationalScope() : outermost_(depth == 0) {
  ++depth;
  if (outermost_) start_ = std::chrono::steady_clock::now();
}

RationalScope::~RationalScope() {
  --depth;
  if (outermost_) {
    accumulated += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
}

double RationalScope::seconds() { return accumulated; }

void RationalScope::reset() { accumulated = 0.0; }

}  // namespace qprefine
