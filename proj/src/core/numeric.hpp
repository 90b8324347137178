#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "errors.hpp"

namespace defexp {

/// Lossless textual form of a double (17 significant digits round-trip).
inline std::string num_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void require_finite(double v, const char* name, const char* op) {
  if (!std::isfinite(v)) {
    throw InvalidArgument(std::string(op) + ": " + name + " must be finite, got " +
                          num_str(v));
  }
}

/// Compensated (Kahan) accumulator for sums whose terms span many magnitudes.
class KahanSum {
 public:
  void add(double term) {
    const double y = term - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace defexp
