#pragma once

#include <concepts>
#include <utility>

#include "errors.hpp"
#include "numeric.hpp"

namespace defexp {

namespace detail {

inline void require_diff_step(double h, const char* op) {
  require_finite(h, "h", op);
  if (h == 0.0) {
    throw InvalidArgument(std::string(op) +
                          ": h must be nonzero; the h -> 0 limit is a "
                          "derivative (see the deformed-calculus operations)");
  }
}

}  // namespace detail

/// Forward h-difference  (f(z+h) - f(z)) / h.
template <std::invocable<double> F>
double forward_diff(F&& f, double z, double h) {
  detail::require_diff_step(h, "forward_diff");
  require_finite(z, "z", "forward_diff");
  return (f(z + h) - f(z)) / h;
}

/// Backward h-difference  (f(z) - f(z-h)) / h.
template <std::invocable<double> F>
double backward_diff(F&& f, double z, double h) {
  detail::require_diff_step(h, "backward_diff");
  require_finite(z, "z", "backward_diff");
  return (f(z) - f(z - h)) / h;
}

/// Central h-difference  (f(z+h) - f(z-h)) / (2h).
template <std::invocable<double> F>
double central_diff(F&& f, double z, double h) {
  detail::require_diff_step(h, "central_diff");
  require_finite(z, "z", "central_diff");
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

}  // namespace defexp
