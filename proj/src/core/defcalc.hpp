#pragma once

#include <cmath>
#include <concepts>

#include "defarith.hpp"
#include "defexp.hpp"
#include "errors.hpp"
#include "numeric.hpp"

namespace defexp {

/// Which deformed derivative: `sub` scales the ordinary derivative by
/// (1 + h z), `sup` by sqrt(1 + h^2 z^2).
enum class DerivKind { sub, sup };

/// Step heuristic for the second-order symmetric difference:
/// cbrt(machine epsilon) * max(1, |z|).
double default_fd_step(double z);

namespace detail {

inline double deform_prefactor(double z, double h, DerivKind kind) {
  return kind == DerivKind::sub ? 1.0 + h * z
                                : std::sqrt(1.0 + h * h * z * z);
}

}  // namespace detail

/// prefactor(z, h, kind) * f'(z), with f' approximated by the symmetric
/// difference (f(z+s) - f(z-s)) / (2s) at s = fd_step.
template <std::invocable<double> F>
double deformed_derivative(F&& f, double z, double h, DerivKind kind,
                           double fd_step) {
  require_finite(z, "z", "deformed_derivative");
  require_finite(h, "h", "deformed_derivative");
  if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
    throw InvalidArgument("deformed_derivative: fd_step must be positive, got " +
                          num_str(fd_step));
  }
  const double slope = (f(z + fd_step) - f(z - fd_step)) / (2.0 * fd_step);
  const double out = detail::deform_prefactor(z, h, kind) * slope;
  if (!std::isfinite(out)) {
    throw NonFiniteResult("deformed_derivative: non-finite value at z = " +
                          num_str(z));
  }
  return out;
}

/// Closed-form value of the matched eigen-relation: the sub derivative of
/// x -> e_sub(x,y,h) and the sup derivative of x -> e_sup(x,y,h) both return
/// y times the exponential itself.  The kind must match the family.
double deformed_derivative_analytic(DerivKind kind, Family which_exp, double x,
                                    double y, double h);

/// Eigenvalue of d/dy on the deformed exponentials: brace_sub(x,h) for the
/// sub family, brace_sup(x,h) for the sup family.
double partial_y_factor(double x, double h, Family which_exp);

}  // namespace defexp
