#pragma once

#include <vector>

namespace defexp {

/// Outcome of a truncated series evaluation.
struct SeriesResult {
  double value = 0.0;
  int terms_used = 0;              // nonzero terms accumulated, always >= 1
  bool terminated_exactly = false; // every remaining term is identically zero
  double tail_estimate = 0.0;      // magnitude of the first omitted term
};

inline constexpr int default_max_terms = 500;
inline constexpr double default_tol = 1e-13;

/// Partial sum of  sum_n x^n y^(n,h) / n!  (equals e_sub(x,y,h)).
/// Requires |h x| < 1; h = 0 sums the Taylor series of exp(x y).
SeriesResult expand_e_sub(double x, double y, double h,
                          int max_terms = default_max_terms,
                          double tol = default_tol);

/// Partial sum of  sum_n x^n y^[n,h] / n!  (equals e_sub(x,y,-h)).
SeriesResult expand_e_sub_neg(double x, double y, double h,
                              int max_terms = default_max_terms,
                              double tol = default_tol);

/// Partial sum of  sum_n x^n y^<n,h> / n!  (equals e_sup(x,y,h) on the
/// validated region).  Gated to |h x| < 1.
SeriesResult expand_e_sup(double x, double y, double h,
                          int max_terms = default_max_terms,
                          double tol = default_tol);

/// Which difference operator drives the coefficient recurrence.
enum class LoweringOp { forward, central };

/// Coefficients c_0..c_n_max generated by the lowering recurrence: c_0 = 1
/// with c_{n+1} = c_n (y - n h) for the forward operator, and c_1 = y with
/// c_{n+2} = c_n (y - n h)(y + n h) for the central one.  They reproduce the
/// matching generalized powers of y.
std::vector<double> recurrence_coefficients(double y, double h, int n_max,
                                            LoweringOp op);

}  // namespace defexp
