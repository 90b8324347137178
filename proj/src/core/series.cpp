#include "series.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"
#include "numeric.hpp"

namespace defexp {

namespace {

void check_expansion_inputs(const char* op, double x, double y, double h,
                            int max_terms, double tol) {
  require_finite(x, "x", op);
  require_finite(y, "y", op);
  require_finite(h, "h", op);
  if (max_terms < 1) {
    throw InvalidArgument(std::string(op) + ": max_terms must be at least 1, got " +
                          std::to_string(max_terms));
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw InvalidArgument(std::string(op) + ": tol must be positive, got " +
                          num_str(tol));
  }
  const double hx = h * x;
  if (!(std::fabs(hx) < 1.0)) {
    throw DomainViolation(std::string(op) + ": |h*x| = " + num_str(std::fabs(hx)) +
                              " violates the convergence condition |h*x| < 1",
                          hx, -1.0, 1.0);
  }
}

double stop_threshold(double tol, double partial_sum) {
  // Relative next-term test, falling back to an absolute test while the
  // partial sum is still below 1.
  return tol * std::max(1.0, std::fabs(partial_sum));
}

// Single-chain driver shared by the backward- and forward-power expansions.
// Terms obey t_0 = 1, t_{n+1} = t_n * x * (y - n*step) / (n+1); the
// expansion in y^[n,h] is the step = -h instance.
SeriesResult expand_single_chain(const char* op, double x, double y,
                                 double step, int max_terms, double tol) {
  SeriesResult r;
  KahanSum sum;
  sum.add(1.0);
  r.terms_used = 1;
  double t = 1.0;
  for (int n = 0;; ++n) {
    const double t_next = t * x * (y - n * step) / (n + 1);
    if (t_next == 0.0) {
      // A zero factor kills every later term: the series is the finite
      // binomial expansion and the sum is exact.
      r.terminated_exactly = true;
      r.tail_estimate = 0.0;
      break;
    }
    if (std::fabs(t_next) < stop_threshold(tol, sum.value())) {
      r.tail_estimate = std::fabs(t_next);
      break;
    }
    if (r.terms_used == max_terms) {
      throw NoConvergence(std::string(op) + ": no convergence within " +
                              std::to_string(max_terms) +
                              " terms at tol = " + num_str(tol),
                          r.terms_used);
    }
    sum.add(t_next);
    ++r.terms_used;
    t = t_next;
  }
  r.value = sum.value();
  return r;
}

}  // namespace

SeriesResult expand_e_sub(double x, double y, double h, int max_terms,
                          double tol) {
  check_expansion_inputs("expand_e_sub", x, y, h, max_terms, tol);
  return expand_single_chain("expand_e_sub", x, y, h, max_terms, tol);
}

SeriesResult expand_e_sub_neg(double x, double y, double h, int max_terms,
                              double tol) {
  check_expansion_inputs("expand_e_sub_neg", x, y, h, max_terms, tol);
  return expand_single_chain("expand_e_sub_neg", x, y, -h, max_terms, tol);
}

SeriesResult expand_e_sup(double x, double y, double h, int max_terms,
                          double tol) {
  check_expansion_inputs("expand_e_sup", x, y, h, max_terms, tol);

  // Central powers couple index n to n+2, so the even and odd terms form two
  // interleaved chains:  t_{n+2} = t_n * (x(y - n h)) * (x(y + n h))
  //                                    / ((n+1)(n+2)).
  // Stopping decisions therefore look at two consecutive terms: one small or
  // vanishing chain says nothing about the other.
  SeriesResult r;
  KahanSum sum;
  sum.add(1.0);
  r.terms_used = 1;
  double t_even = 1.0;
  double t_odd = x * y;
  int zero_streak = 0;   // a single zero kills its whole chain
  int small_streak = 0;  // zeros count as small
  for (int n = 1;; ++n) {
    double& slot = (n % 2 == 0) ? t_even : t_odd;
    if (n >= 2) {
      const int k = n - 2;
      slot = slot * (x * (y - k * h)) * (x * (y + k * h)) /
             (static_cast<double>(k + 1) * (k + 2));
    }
    const double t_n = slot;

    zero_streak = (t_n == 0.0) ? zero_streak + 1 : 0;
    if (zero_streak == 2) {
      // Both chains are dead; the sum is exact.
      r.terminated_exactly = true;
      r.tail_estimate = 0.0;
      break;
    }
    const bool small = std::fabs(t_n) < stop_threshold(tol, sum.value());
    small_streak = small ? small_streak + 1 : 0;
    if (small_streak == 2) {
      r.tail_estimate = std::fabs(t_n);
      break;
    }

    if (t_n == 0.0) continue;  // nothing to accumulate
    if (r.terms_used == max_terms) {
      throw NoConvergence(std::string("expand_e_sup: no convergence within ") +
                              std::to_string(max_terms) +
                              " terms at tol = " + num_str(tol),
                          r.terms_used);
    }
    sum.add(t_n);
    ++r.terms_used;
  }
  r.value = sum.value();
  return r;
}

std::vector<double> recurrence_coefficients(double y, double h, int n_max,
                                            LoweringOp op) {
  require_finite(y, "y", "recurrence_coefficients");
  require_finite(h, "h", "recurrence_coefficients");
  if (n_max < 0) {
    throw InvalidArgument("recurrence_coefficients: n_max must be nonnegative, got " +
                          std::to_string(n_max));
  }
  std::vector<double> c(static_cast<std::size_t>(n_max) + 1);
  c[0] = 1.0;
  if (op == LoweringOp::forward) {
    for (int n = 0; n < n_max; ++n) c[n + 1] = c[n] * (y - n * h);
  } else {
    if (n_max >= 1) c[1] = y;
    for (int n = 0; n + 2 <= n_max; ++n) {
      c[n + 2] = c[n] * ((y - n * h) * (y + n * h));
    }
  }
  return c;
}

}  // namespace defexp
