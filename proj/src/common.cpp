#include "einlab/common.hpp"

#include <cstdlib>

namespace einlab {

double positivity_tolerance() {
  // Re-read on every call so callers may adjust the environment at runtime.
  if (const char* s = std::getenv("EINLAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end != s && v > 0.0) return v;
  }
  return 1e-9;
}

double ExtendedReal::value() const {
  if (neg_inf_) throw error("attempt to read the finite value of -infinity");
  return value_;
}

ExtendedReal ext_max(const ExtendedReal& a, const ExtendedReal& b) { return a < b ? b : a; }

}  // namespace einlab
