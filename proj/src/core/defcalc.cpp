#include "defcalc.hpp"

#include <cmath>
#include <limits>

namespace defexp {

double default_fd_step(double z) {
  static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  return base * std::max(1.0, std::fabs(z));
}

double deformed_derivative_analytic(DerivKind kind, Family which_exp, double x,
                                    double y, double h) {
  const bool matched = (kind == DerivKind::sub && which_exp == Family::sub) ||
                       (kind == DerivKind::sup && which_exp == Family::sup);
  if (!matched) {
    throw InvalidArgument(
        "deformed_derivative_analytic: operator kind and exponential family "
        "must match (sub with e_sub, sup with e_sup)");
  }
  return which_exp == Family::sub ? y * e_sub(x, y, h) : y * e_sup(x, y, h);
}

double partial_y_factor(double x, double h, Family which_exp) {
  return which_exp == Family::sub ? brace_sub(x, h) : brace_sup(x, h);
}

}  // namespace defexp
