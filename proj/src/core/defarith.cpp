#include "defarith.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"
#include "numeric.hpp"

namespace defexp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool DomainInterval::contains(double x) const { return x > lower && x < upper; }

std::string DomainInterval::to_string() const {
  return "(" + (lower == -kInf ? std::string("-inf") : num_str(lower)) + ", " +
         (upper == kInf ? std::string("+inf") : num_str(upper)) + ")";
}

double brace_sub(double x, double h) {
  require_finite(x, "x", "brace_sub");
  require_finite(h, "h", "brace_sub");
  if (h == 0.0) return x;
  const double hx = h * x;
  if (!(hx > -1.0)) {
    throw DomainViolation("brace_sub: 1 + h*x = " + num_str(1.0 + hx) +
                              " is not positive; x = " + num_str(x) +
                              " lies outside " +
                              group_domain(h, Family::sub).to_string(),
                          x, group_domain(h, Family::sub).lower,
                          group_domain(h, Family::sub).upper);
  }
  return std::log1p(hx) / h;
}

double brace_sup(double x, double h) {
  require_finite(x, "x", "brace_sup");
  require_finite(h, "h", "brace_sup");
  if (h == 0.0) return x;
  return std::asinh(h * x) / h;
}

double oplus_sub(double x1, double x2, double h) {
  require_finite(x1, "x1", "oplus_sub");
  require_finite(x2, "x2", "oplus_sub");
  require_finite(h, "h", "oplus_sub");
  return x1 + x2 + h * x1 * x2;
}

double ominus_sub(double x1, double x2, double h) {
  require_finite(x1, "x1", "ominus_sub");
  require_finite(x2, "x2", "ominus_sub");
  require_finite(h, "h", "ominus_sub");
  const double denom = 1.0 + h * x2;
  if (denom == 0.0) {
    const double pole = -1.0 / h;
    throw DomainViolation("ominus_sub: x2 = " + num_str(x2) +
                              " is the pole -1/h = " + num_str(pole) +
                              " of the deformed subtraction",
                          x2, pole, pole);
  }
  return (x1 - x2) / denom;
}

double neg_sub(double x, double h) {
  require_finite(x, "x", "neg_sub");
  require_finite(h, "h", "neg_sub");
  const double denom = 1.0 + h * x;
  if (denom == 0.0) {
    const double pole = -1.0 / h;
    throw DomainViolation("neg_sub: x = " + num_str(x) +
                              " is the pole -1/h = " + num_str(pole) +
                              "; no group inverse exists there",
                          x, pole, pole);
  }
  return -x / denom;
}

double oplus_sup(double x1, double x2, double h) {
  require_finite(x1, "x1", "oplus_sup");
  require_finite(x2, "x2", "oplus_sup");
  require_finite(h, "h", "oplus_sup");
  return x1 * std::sqrt(1.0 + h * h * x2 * x2) +
         x2 * std::sqrt(1.0 + h * h * x1 * x1);
}

double ominus_sup(double x1, double x2, double h) {
  require_finite(x1, "x1", "ominus_sup");
  require_finite(x2, "x2", "ominus_sup");
  require_finite(h, "h", "ominus_sup");
  return x1 * std::sqrt(1.0 + h * h * x2 * x2) -
         x2 * std::sqrt(1.0 + h * h * x1 * x1);
}

DomainInterval group_domain(double h, Family family) {
  require_finite(h, "h", "group_domain");
  if (family == Family::sup) return {-kInf, kInf};
  if (h > 0.0) return {-1.0 / h, kInf};
  if (h < 0.0) return {-kInf, -1.0 / h};
  return {-kInf, kInf};  // h = 0: the classical limit covers the real line
}

}  // namespace defexp
