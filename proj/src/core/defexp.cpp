#include "defexp.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"
#include "numeric.hpp"

namespace defexp {

double e_sub(double x, double y, double h) {
  require_finite(y, "y", "e_sub");
  if (h == 0.0) {
    require_finite(x, "x", "e_sub");
    return std::exp(x * y);
  }
  // The log form never builds the exponent ratio y/h explicitly, which keeps
  // small-h evaluations away from overflow.
  return std::exp(y * brace_sub(x, h));
}

double e_sup(double x, double y, double h) {
  require_finite(y, "y", "e_sup");
  if (h == 0.0) {
    require_finite(x, "x", "e_sup");
    return std::exp(x * y);
  }
  return std::exp(y * brace_sup(x, h));
}

double tsallis_q_exp(double x, double q) {
  require_finite(x, "x", "tsallis_q_exp");
  require_finite(q, "q", "tsallis_q_exp");
  if (q == 1.0) return std::exp(x);
  const double h = 1.0 - q;
  // Cutoff convention: outside the support the q-exponential is 0, not an
  // error.
  if (!(h * x > -1.0)) return 0.0;
  return e_sub(x, 1.0, h);
}

double kaniadakis_exp(double x, double kappa) {
  return e_sup(x, 1.0, kappa);
}

double quantum_group_exp(double y, double p) {
  require_finite(y, "y", "quantum_group_exp");
  require_finite(p, "p", "quantum_group_exp");
  if (!(p > 0.0)) {
    throw DomainViolation(
        "quantum_group_exp: p = " + num_str(p) + " must be positive", p, 0.0,
        std::numeric_limits<double>::infinity());
  }
  return e_sub(1.0, y, p - 1.0);
}

double sub_to_sup_shift(double x, double h) {
  require_finite(x, "x", "sub_to_sup_shift");
  require_finite(h, "h", "sub_to_sup_shift");
  if (h == 0.0) {
    throw InvalidArgument(
        "sub_to_sup_shift: h must be nonzero (the shift degenerates to x in "
        "the classical limit)");
  }
  // x - (1 - sqrt(1+h^2 x^2))/h, written without the cancelling difference.
  return x + h * x * x / (1.0 + std::sqrt(1.0 + h * h * x * x));
}

}  // namespace defexp
