#include "defexp/defexp.h"

#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <utility>

#include "core/defarith.hpp"
#include "core/defcalc.hpp"
#include "core/defexp.hpp"
#include "core/diffops.hpp"
#include "core/errors.hpp"
#include "core/genpow.hpp"
#include "core/series.hpp"
#include "core/verify.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what; }

template <class Fn>
defexp_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return DEFEXP_OK;
  } catch (const defexp::DomainViolation& e) {
    set_error(e.what());
    return DEFEXP_ERR_DOMAIN;
  } catch (const defexp::NoConvergence& e) {
    set_error(e.what());
    return DEFEXP_ERR_NO_CONVERGENCE;
  } catch (const defexp::UnknownIdentity& e) {
    set_error(e.what());
    return DEFEXP_ERR_UNKNOWN_IDENTITY;
  } catch (const defexp::EmptyGrid& e) {
    set_error(e.what());
    return DEFEXP_ERR_EMPTY_GRID;
  } catch (const defexp::NonFiniteResult& e) {
    set_error(e.what());
    return DEFEXP_ERR_NONFINITE;
  } catch (const defexp::InvalidArgument& e) {
    set_error(e.what());
    return DEFEXP_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DEFEXP_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return DEFEXP_ERR_INTERNAL;
  }
}

defexp_status require_out(const void* out) {
  if (out == nullptr) {
    g_last_error = "output pointer must not be NULL";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  return DEFEXP_OK;
}

defexp::PowerKind to_power_kind(defexp_power_kind kind) {
  switch (kind) {
    case DEFEXP_POWER_BACKWARD:
      return defexp::PowerKind::backward;
    case DEFEXP_POWER_FORWARD:
      return defexp::PowerKind::forward;
    case DEFEXP_POWER_CENTRAL:
      return defexp::PowerKind::central;
  }
  throw defexp::InvalidArgument("unknown power kind");
}

defexp::Family to_family(defexp_family f) {
  switch (f) {
    case DEFEXP_FAMILY_SUB:
      return defexp::Family::sub;
    case DEFEXP_FAMILY_SUP:
      return defexp::Family::sup;
  }
  throw defexp::InvalidArgument("unknown family");
}

defexp::DerivKind to_deriv_kind(defexp_deriv_kind k) {
  switch (k) {
    case DEFEXP_DERIV_SUB:
      return defexp::DerivKind::sub;
    case DEFEXP_DERIV_SUP:
      return defexp::DerivKind::sup;
  }
  throw defexp::InvalidArgument("unknown derivative kind");
}

// Adapts a C callback to the core's callable interface.
struct CallbackFn {
  defexp_real_fn f;
  void* user;
  double operator()(double z) const { return f(z, user); }
};

template <class Fn>
defexp_status scalar_call(double* out, Fn&& fn) {
  if (defexp_status s = require_out(out); s != DEFEXP_OK) return s;
  return guarded([&] { *out = fn(); });
}

}  // namespace

extern "C" {

const char* defexp_version(void) { return "0.1.0"; }

const char* defexp_status_name(defexp_status status) {
  switch (status) {
    case DEFEXP_OK:
      return "ok";
    case DEFEXP_ERR_DOMAIN:
      return "domain violation";
    case DEFEXP_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case DEFEXP_ERR_NO_CONVERGENCE:
      return "no convergence";
    case DEFEXP_ERR_UNKNOWN_IDENTITY:
      return "unknown identity";
    case DEFEXP_ERR_EMPTY_GRID:
      return "empty grid";
    case DEFEXP_ERR_NONFINITE:
      return "non-finite result";
    case DEFEXP_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* defexp_last_error(void) { return g_last_error.c_str(); }

/* ---- generalized powers ---- */

defexp_status defexp_gen_pow(double z, int n, double h, defexp_power_kind kind,
                             double* out) {
  return scalar_call(out,
                     [&] { return defexp::gen_pow(z, n, h, to_power_kind(kind)); });
}

defexp_status defexp_binom_via_gen_pow(double z, int n, double h, double* out) {
  return scalar_call(out, [&] { return defexp::binom_via_gen_pow(z, n, h); });
}

/* ---- difference operators ---- */

defexp_status defexp_forward_diff(defexp_real_fn f, void* user, double z,
                                  double h, double* out) {
  if (f == nullptr) {
    g_last_error = "callback must not be NULL";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  return scalar_call(
      out, [&] { return defexp::forward_diff(CallbackFn{f, user}, z, h); });
}

defexp_status defexp_backward_diff(defexp_real_fn f, void* user, double z,
                                   double h, double* out) {
  if (f == nullptr) {
    g_last_error = "callback must not be NULL";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  return scalar_call(
      out, [&] { return defexp::backward_diff(CallbackFn{f, user}, z, h); });
}

defexp_status defexp_central_diff(defexp_real_fn f, void* user, double z,
                                  double h, double* out) {
  if (f == nullptr) {
    g_last_error = "callback must not be NULL";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  return scalar_call(
      out, [&] { return defexp::central_diff(CallbackFn{f, user}, z, h); });
}

/* ---- deformation maps and group arithmetic ---- */

defexp_status defexp_brace_sub(double x, double h, double* out) {
  return scalar_call(out, [&] { return defexp::brace_sub(x, h); });
}

defexp_status defexp_brace_sup(double x, double h, double* out) {
  return scalar_call(out, [&] { return defexp::brace_sup(x, h); });
}

defexp_status defexp_oplus_sub(double x1, double x2, double h, double* out) {
  return scalar_call(out, [&] { return defexp::oplus_sub(x1, x2, h); });
}

defexp_status defexp_ominus_sub(double x1, double x2, double h, double* out) {
  return scalar_call(out, [&] { return defexp::ominus_sub(x1, x2, h); });
}

defexp_status defexp_neg_sub(double x, double h, double* out) {
  return scalar_call(out, [&] { return defexp::neg_sub(x, h); });
}

defexp_status defexp_oplus_sup(double x1, double x2, double h, double* out) {
  return scalar_call(out, [&] { return defexp::oplus_sup(x1, x2, h); });
}

defexp_status defexp_ominus_sup(double x1, double x2, double h, double* out) {
  return scalar_call(out, [&] { return defexp::ominus_sup(x1, x2, h); });
}

defexp_status defexp_group_domain(double h, defexp_family family,
                                  double* lower, double* upper) {
  if (defexp_status s = require_out(lower); s != DEFEXP_OK) return s;
  if (defexp_status s = require_out(upper); s != DEFEXP_OK) return s;
  return guarded([&] {
    const defexp::DomainInterval d = defexp::group_domain(h, to_family(family));
    *lower = d.lower;
    *upper = d.upper;
  });
}

/* ---- deformed exponentials ---- */

defexp_status defexp_e_sub(double x, double y, double h, double* out) {
  return scalar_call(out, [&] { return defexp::e_sub(x, y, h); });
}

defexp_status defexp_e_sup(double x, double y, double h, double* out) {
  return scalar_call(out, [&] { return defexp::e_sup(x, y, h); });
}

defexp_status defexp_tsallis_q_exp(double x, double q, double* out) {
  return scalar_call(out, [&] { return defexp::tsallis_q_exp(x, q); });
}

defexp_status defexp_kaniadakis_exp(double x, double kappa, double* out) {
  return scalar_call(out, [&] { return defexp::kaniadakis_exp(x, kappa); });
}

defexp_status defexp_quantum_group_exp(double y, double p, double* out) {
  return scalar_call(out, [&] { return defexp::quantum_group_exp(y, p); });
}

defexp_status defexp_sub_to_sup_shift(double x, double h, double* out) {
  return scalar_call(out, [&] { return defexp::sub_to_sup_shift(x, h); });
}

/* ---- series ---- */

defexp_status defexp_expand(defexp_expansion which, double x, double y,
                            double h, int max_terms, double tol,
                            defexp_series_result* out) {
  if (defexp_status s = require_out(out); s != DEFEXP_OK) return s;
  const int mt = max_terms > 0 ? max_terms : defexp::default_max_terms;
  const double tl = tol > 0.0 ? tol : defexp::default_tol;
  return guarded([&] {
    defexp::SeriesResult r;
    switch (which) {
      case DEFEXP_EXPANSION_SUB:
        r = defexp::expand_e_sub(x, y, h, mt, tl);
        break;
      case DEFEXP_EXPANSION_SUB_NEG:
        r = defexp::expand_e_sub_neg(x, y, h, mt, tl);
        break;
      case DEFEXP_EXPANSION_SUP:
        r = defexp::expand_e_sup(x, y, h, mt, tl);
        break;
      default:
        throw defexp::InvalidArgument("unknown expansion kind");
    }
    out->value = r.value;
    out->terms_used = r.terms_used;
    out->terminated_exactly = r.terminated_exactly ? 1 : 0;
    out->tail_estimate = r.tail_estimate;
  });
}

defexp_status defexp_recurrence_coefficients(double y, double h, int n_max,
                                             defexp_lowering op,
                                             double* coeffs) {
  if (defexp_status s = require_out(coeffs); s != DEFEXP_OK) return s;
  return guarded([&] {
    const defexp::LoweringOp lop = op == DEFEXP_LOWERING_FORWARD
                                       ? defexp::LoweringOp::forward
                                       : defexp::LoweringOp::central;
    const std::vector<double> c =
        defexp::recurrence_coefficients(y, h, n_max, lop);
    for (std::size_t i = 0; i < c.size(); ++i) coeffs[i] = c[i];
  });
}

/* ---- deformed calculus ---- */

double defexp_default_fd_step(double z) { return defexp::default_fd_step(z); }

defexp_status defexp_deformed_derivative(defexp_real_fn f, void* user,
                                         double z, double h,
                                         defexp_deriv_kind kind,
                                         double fd_step, double* out) {
  if (f == nullptr) {
    g_last_error = "callback must not be NULL";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  return scalar_call(out, [&] {
    return defexp::deformed_derivative(CallbackFn{f, user}, z, h,
                                       to_deriv_kind(kind), fd_step);
  });
}

defexp_status defexp_deformed_derivative_analytic(defexp_deriv_kind kind,
                                                  defexp_family which_exp,
                                                  double x, double y, double h,
                                                  double* out) {
  return scalar_call(out, [&] {
    return defexp::deformed_derivative_analytic(to_deriv_kind(kind),
                                                to_family(which_exp), x, y, h);
  });
}

defexp_status defexp_partial_y_factor(double x, double h,
                                      defexp_family which_exp, double* out) {
  return scalar_call(
      out, [&] { return defexp::partial_y_factor(x, h, to_family(which_exp)); });
}

/* ---- verification ---- */

struct defexp_verifier_t {
  defexp::GridSpec grid;
};

struct defexp_reports_t {
  std::vector<defexp::IdentityReport> reports;
};

int defexp_identity_count(void) { return defexp::identity_count(); }

const char* defexp_identity_id(int index) {
  return defexp::identity_id_cstr(index);
}

defexp_status defexp_identity_description(const char* id, const char** out) {
  if (defexp_status s = require_out(out); s != DEFEXP_OK) return s;
  if (id == nullptr) {
    g_last_error = "identity id must not be NULL";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  static thread_local std::string storage;
  return guarded([&] {
    storage = defexp::identity_description(id);
    *out = storage.c_str();
  });
}

defexp_verifier_t* defexp_verifier_create(void) {
  return new (std::nothrow) defexp_verifier_t{};
}

void defexp_verifier_destroy(defexp_verifier_t* v) { delete v; }

defexp_status defexp_verifier_set_seed(defexp_verifier_t* v, uint64_t seed) {
  if (v == nullptr) {
    g_last_error = "verifier must not be NULL";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  v->grid.seed = seed;
  return DEFEXP_OK;
}

defexp_status defexp_verifier_set_samples(defexp_verifier_t* v,
                                          int samples_per_h) {
  if (v == nullptr || samples_per_h < 1) {
    g_last_error = "verifier must not be NULL and samples_per_h must be >= 1";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  v->grid.samples_per_h = samples_per_h;
  return DEFEXP_OK;
}

defexp_status defexp_verifier_set_range(defexp_verifier_t* v, char axis,
                                        double lo, double hi) {
  if (v == nullptr) {
    g_last_error = "verifier must not be NULL";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    g_last_error = "range must satisfy lo <= hi with finite endpoints";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  if (axis == 'x') {
    v->grid.x_lo = lo;
    v->grid.x_hi = hi;
  } else if (axis == 'y') {
    v->grid.y_lo = lo;
    v->grid.y_hi = hi;
  } else {
    g_last_error = "axis must be 'x' or 'y'";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  return DEFEXP_OK;
}

defexp_status defexp_verifier_set_sampling(defexp_verifier_t* v,
                                           defexp_sampling mode) {
  if (v == nullptr) {
    g_last_error = "verifier must not be NULL";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  switch (mode) {
    case DEFEXP_SAMPLING_RANDOM:
      v->grid.mode = defexp::SampleMode::random;
      return DEFEXP_OK;
    case DEFEXP_SAMPLING_UNIFORM:
      v->grid.mode = defexp::SampleMode::uniform;
      return DEFEXP_OK;
  }
  g_last_error = "unknown sampling mode";
  return DEFEXP_ERR_INVALID_ARGUMENT;
}

defexp_status defexp_verifier_run(defexp_verifier_t* v, const char* pattern,
                                  defexp_reports_t** out) {
  if (defexp_status s = require_out(out); s != DEFEXP_OK) return s;
  if (v == nullptr) {
    g_last_error = "verifier must not be NULL";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto r = new defexp_reports_t{};
    try {
      if (pattern == nullptr || *pattern == '\0') {
        r->reports = defexp::run_all(v->grid);
      } else {
        r->reports = defexp::run_matching(pattern, v->grid);
      }
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

defexp_status defexp_verifier_run_one(defexp_verifier_t* v, const char* id,
                                      double tolerance,
                                      defexp_reports_t** out) {
  if (defexp_status s = require_out(out); s != DEFEXP_OK) return s;
  if (v == nullptr || id == nullptr) {
    g_last_error = "verifier and id must not be NULL";
    return DEFEXP_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto r = new defexp_reports_t{};
    try {
      r->reports.push_back(defexp::run_identity(id, v->grid, tolerance));
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

void defexp_reports_destroy(defexp_reports_t* r) { delete r; }

int defexp_reports_count(const defexp_reports_t* r) {
  return r == nullptr ? 0 : static_cast<int>(r->reports.size());
}

int defexp_reports_all_passed(const defexp_reports_t* r) {
  return (r != nullptr && defexp::all_passed(r->reports)) ? 1 : 0;
}

namespace {

const defexp::IdentityReport* report_at(const defexp_reports_t* r, int i) {
  if (r == nullptr || i < 0 || i >= static_cast<int>(r->reports.size())) {
    return nullptr;
  }
  return &r->reports[static_cast<std::size_t>(i)];
}

}  // namespace

const char* defexp_reports_id(const defexp_reports_t* r, int i) {
  const auto* rep = report_at(r, i);
  return rep ? rep->identity_id.c_str() : nullptr;
}

const char* defexp_reports_grid(const defexp_reports_t* r, int i) {
  const auto* rep = report_at(r, i);
  return rep ? rep->grid_spec.c_str() : nullptr;
}

const char* defexp_reports_worst_point(const defexp_reports_t* r, int i) {
  const auto* rep = report_at(r, i);
  return rep ? rep->worst_point.c_str() : nullptr;
}

long long defexp_reports_samples(const defexp_reports_t* r, int i) {
  const auto* rep = report_at(r, i);
  return rep ? rep->samples : 0;
}

long long defexp_reports_skipped(const defexp_reports_t* r, int i) {
  const auto* rep = report_at(r, i);
  return rep ? rep->skipped : 0;
}

double defexp_reports_max_abs_err(const defexp_reports_t* r, int i) {
  const auto* rep = report_at(r, i);
  return rep ? rep->max_abs_err : std::numeric_limits<double>::quiet_NaN();
}

double defexp_reports_max_rel_err(const defexp_reports_t* r, int i) {
  const auto* rep = report_at(r, i);
  return rep ? rep->max_rel_err : std::numeric_limits<double>::quiet_NaN();
}

double defexp_reports_max_scaled_err(const defexp_reports_t* r, int i) {
  const auto* rep = report_at(r, i);
  return rep ? rep->max_scaled_err : std::numeric_limits<double>::quiet_NaN();
}

double defexp_reports_tolerance(const defexp_reports_t* r, int i) {
  const auto* rep = report_at(r, i);
  return rep ? rep->tolerance : std::numeric_limits<double>::quiet_NaN();
}

int defexp_reports_passed(const defexp_reports_t* r, int i) {
  const auto* rep = report_at(r, i);
  return (rep && rep->passed) ? 1 : 0;
}

} /* extern "C" */
