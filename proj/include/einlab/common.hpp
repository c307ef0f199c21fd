#pragma once

#include <stdexcept>
#include <string>

namespace einlab {

inline constexpr const char* kVersion = "0.1.0";

/// Error type thrown by all einlab modules.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Relative threshold for strict-positivity decisions. Defaults to 1e-9 and
/// can be overridden through the EINLAB_TOL environment variable.
double positivity_tolerance();

/// Relative Ricci-spectrum spread below which a point counts as Einstein.
inline constexpr double kEinsteinSpreadTolerance = 1e-9;

/// A real number extended with a symbolic minus infinity. The symbolic value
/// is kept out of the floating domain so that reports can spell it "-inf"
/// and accidental arithmetic on it fails loudly instead of producing NaNs.
class ExtendedReal {
 public:
  ExtendedReal() = default;
  ExtendedReal(double v) : neg_inf_(false), value_(v) {}

  static ExtendedReal neg_infinity() {
    ExtendedReal r;
    r.neg_inf_ = true;
    return r;
  }

  bool is_neg_infinity() const { return neg_inf_; }
  bool is_finite() const { return !neg_inf_; }

  /// Finite value; throws if this is -infinity.
  double value() const;

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExtendedReal& a, const ExtendedReal& b) { return !(a == b); }
  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.neg_inf_) return !b.neg_inf_;
    if (b.neg_inf_) return false;
    return a.value_ < b.value_;
  }

 private:
  bool neg_inf_ = false;
  double value_ = 0.0;
};

/// Larger of two extended reals.
ExtendedReal ext_max(const ExtendedReal& a, const ExtendedReal& b);

}  // namespace einlab
