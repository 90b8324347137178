#include "verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "defarith.hpp"
#include "defcalc.hpp"
#include "defexp.hpp"
#include "diffops.hpp"
#include "errors.hpp"
#include "genpow.hpp"
#include "numeric.hpp"
#include "series.hpp"

namespace defexp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Guard constants.  Two-route identity checks compare independently rounded
// products; their factor errors are absolute (~eps * magnitude), so relative
// agreement is unverifiable where a factor or a domain denominator crosses
// zero.  Draws inside these neighbourhoods are rejected and counted.
constexpr double kSubDomainMargin = 1e-2;   // 1 + h x kept >= this
constexpr double kFactorSeparation = 0.02;  // |z - k h| kept >= this
constexpr int kMaxDraws = 256;              // rejection budget per sample

std::uint64_t fnv1a(const char* s) {
  std::uint64_t hash = 1469598103934665603ull;
  for (; *s; ++s) {
    hash ^= static_cast<unsigned char>(*s);
    hash *= 1099511628211ull;
  }
  return hash;
}

std::uint64_t mix_seed(std::uint64_t seed, const char* id) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull + fnv1a(id);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic sample stream.  Random mode derives doubles from the raw
// 64-bit output so reports do not depend on the standard library's
// distribution details; uniform mode walks a Weyl (golden-ratio) sequence,
// equidistributed and seed-independent.
struct Rng {
  std::mt19937_64 gen;
  bool weyl_mode;
  double weyl_state = 0.0;
  static constexpr double kWeylStep = 0.6180339887498949;

  Rng(std::uint64_t s, SampleMode mode)
      : gen(s), weyl_mode(mode == SampleMode::uniform) {}

  double unit() {
    if (weyl_mode) {
      weyl_state += kWeylStep;
      if (weyl_state >= 1.0) weyl_state -= 1.0;
      return weyl_state;
    }
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int uniform_int(int lo, int hi) {
    if (weyl_mode) {
      const int span = hi - lo + 1;
      const int k = static_cast<int>(unit() * span);
      return lo + std::min(k, span - 1);
    }
    return lo +
           static_cast<int>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

struct Pt {
  const char* name;
  double v;
};

std::string format_point(std::initializer_list<Pt> at) {
  std::string out;
  char buf[48];
  for (const Pt& p : at) {
    if (!out.empty()) out += ", ";
    std::snprintf(buf, sizeof(buf), "%s=%.6g", p.name, p.v);
    out += buf;
  }
  return out;
}

// Accumulates worst-case errors over the samples of one identity.
class Checker {
 public:
  void check(double actual, double expected, std::initializer_list<Pt> at) {
    ++samples_;
    double abs = std::fabs(actual - expected);
    if (!std::isfinite(actual) || !std::isfinite(expected)) abs = kInf;
    const double ref = std::fabs(expected);
    const double rel = abs == 0.0 ? 0.0 : (ref > 0.0 ? abs / ref : kInf);
    const double scaled = abs / std::max(1.0, ref);
    max_abs_ = std::max(max_abs_, abs);
    max_rel_ = std::max(max_rel_, rel);
    if (samples_ == 1 || scaled > max_scaled_) {
      max_scaled_ = scaled;
      worst_ = format_point(at);
    }
  }

  // Pass/fail predicates enter the report as a 0/1 error indicator.
  void require(bool ok, std::initializer_list<Pt> at) {
    check(ok ? 0.0 : 1.0, 0.0, at);
  }

  void skip() { ++skipped_; }

  long samples() const { return samples_; }
  long skipped() const { return skipped_; }
  double max_abs() const { return max_abs_; }
  double max_rel() const { return max_rel_; }
  double max_scaled() const { return max_scaled_; }
  const std::string& worst() const { return worst_; }

 private:
  long samples_ = 0;
  long skipped_ = 0;
  double max_abs_ = 0.0;
  double max_rel_ = 0.0;
  double max_scaled_ = 0.0;
  std::string worst_;
};

std::vector<double> h_list(const GridSpec& g, bool include_zero) {
  std::vector<double> hs;
  for (double h : g.h_values)
    if (h != 0.0) hs.push_back(h);
  if (include_zero) hs.push_back(0.0);
  return hs;
}

template <class Pred>
std::optional<double> draw_if(Rng& rng, Checker& ck, double lo, double hi,
                              Pred&& pred) {
  for (int t = 0; t < kMaxDraws; ++t) {
    const double v = rng.uniform(lo, hi);
    if (pred(v)) return v;
    ck.skip();
  }
  return std::nullopt;
}

// z whose lattice factors z - k h, |k| <= kmax, all stay separated from 0.
std::optional<double> draw_separated(Rng& rng, Checker& ck, const GridSpec& g,
                                     double h, int kmax) {
  return draw_if(rng, ck, g.x_lo, g.x_hi, [&](double z) {
    for (int k = -kmax; k <= kmax; ++k) {
      if (std::fabs(z - k * h) < kFactorSeparation) return false;
    }
    return true;
  });
}

// x inside the sub-family domain with margin: 1 + h x >= margin.
std::optional<double> draw_sub_domain(Rng& rng, Checker& ck, const GridSpec& g,
                                      double h,
                                      double margin = kSubDomainMargin) {
  return draw_if(rng, ck, g.x_lo, g.x_hi,
                 [&](double x) { return 1.0 + h * x >= margin; });
}

// ---------------------------------------------------------------------------
// Generalized powers
// ---------------------------------------------------------------------------

void id_genpow_reflection(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const int n = rng.uniform_int(1, 10);
      const double z = rng.uniform(g.x_lo, g.x_hi);
      ck.check(gen_pow(z, n, h, PowerKind::backward),
               gen_pow(z, n, -h, PowerKind::forward),
               {{"z", z}, {"n", double(n)}, {"h", h}});
      ck.check(gen_pow(z, n, h, PowerKind::forward),
               gen_pow(z, n, -h, PowerKind::backward),
               {{"z", z}, {"n", double(n)}, {"h", h}});
    }
  }
}

void id_genpow_central_parity(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const int n = rng.uniform_int(1, 10);
      const double z = rng.uniform(g.x_lo, g.x_hi);
      ck.check(gen_pow(z, n, h, PowerKind::central),
               gen_pow(z, n, -h, PowerKind::central),
               {{"z", z}, {"n", double(n)}, {"h", h}});
    }
  }
}

void id_genpow_central_via_backward(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const int n = rng.uniform_int(1, 10);
      const auto z = draw_separated(rng, ck, g, h, n);
      if (!z) continue;
      ck.check(gen_pow(*z, n, h, PowerKind::central),
               *z * gen_pow(*z + (n - 2) * h, n - 1, 2.0 * h,
                            PowerKind::backward),
               {{"z", *z}, {"n", double(n)}, {"h", h}});
    }
  }
}

void id_genpow_central_split_even(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const int m = rng.uniform_int(1, 5);
      const auto z = draw_separated(rng, ck, g, h, 2 * m);
      if (!z) continue;
      ck.check(gen_pow(*z, 2 * m, h, PowerKind::central),
               gen_pow(*z, m, 2.0 * h, PowerKind::backward) *
                   gen_pow(*z, m, 2.0 * h, PowerKind::forward),
               {{"z", *z}, {"m", double(m)}, {"h", h}});
    }
  }
}

void id_genpow_central_split_odd(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const int m = rng.uniform_int(0, 4);
      const auto z = draw_separated(rng, ck, g, h, 2 * m + 1);
      if (!z) continue;
      ck.check(gen_pow(*z, 2 * m + 1, h, PowerKind::central),
               *z * gen_pow(*z - h, m, 2.0 * h, PowerKind::backward) *
                   gen_pow(*z + h, m, 2.0 * h, PowerKind::forward),
               {{"z", *z}, {"m", double(m)}, {"h", h}});
    }
  }
}

void id_genpow_even_odd_product(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const int m = rng.uniform_int(1, 4);
      const auto z = draw_separated(rng, ck, g, h, 2 * m + 1);
      if (!z) continue;
      ck.check(gen_pow(*z, 2 * m, h, PowerKind::central) *
                   gen_pow(*z, 2 * m + 1, h, PowerKind::central),
               *z * gen_pow(*z, 2 * m, h, PowerKind::backward) *
                   gen_pow(*z, 2 * m, h, PowerKind::forward),
               {{"z", *z}, {"m", double(m)}, {"h", h}});
    }
  }
}

void id_genpow_binomial_link(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const int n = rng.uniform_int(0, 10);
      const auto z = draw_separated(rng, ck, g, h, n);
      if (!z) continue;
      // Independent route: C(z/h, n) accumulated factor by factor.
      const double r = *z / h;
      double binom = 1.0;
      for (int k = 0; k < n; ++k) binom *= (r - k) / (k + 1);
      ck.check(binom_via_gen_pow(*z, n, h), binom,
               {{"z", *z}, {"n", double(n)}, {"h", h}});
    }
  }
}

void id_genpow_h_zero(const GridSpec& g, Rng& rng, Checker& ck) {
  for (int i = 0; i < g.samples_per_h; ++i) {
    const int n = rng.uniform_int(0, 10);
    const double z = rng.uniform(g.x_lo, g.x_hi);
    double zn = 1.0;
    for (int k = 0; k < n; ++k) zn *= z;
    for (PowerKind kind :
         {PowerKind::backward, PowerKind::forward, PowerKind::central}) {
      ck.check(gen_pow(z, n, 0.0, kind), zn, {{"z", z}, {"n", double(n)}});
    }
  }
}

// ---------------------------------------------------------------------------
// Difference operators
// ---------------------------------------------------------------------------

double probe_fn(double t) { return std::exp(0.3 * t) + t * t - 2.0 * t; }

void id_diffops_backward_as_forward(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double z = rng.uniform(g.x_lo, g.x_hi);
      const double lhs = backward_diff(probe_fn, z, h);
      ck.check(lhs, forward_diff(probe_fn, z, -h), {{"z", z}, {"h", h}});
      ck.check(lhs, forward_diff(probe_fn, z - h, h), {{"z", z}, {"h", h}});
    }
  }
}

void id_diffops_central_symmetry(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double z = rng.uniform(g.x_lo, g.x_hi);
      ck.check(central_diff(probe_fn, z, -h), central_diff(probe_fn, z, h),
               {{"z", z}, {"h", h}});
    }
  }
}

void id_diffops_lowering_forward(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const int n = rng.uniform_int(1, 10);
      const auto z = draw_separated(rng, ck, g, h, n + 1);
      if (!z) continue;
      const auto f = [n, h](double t) {
        return gen_pow(t, n, h, PowerKind::backward);
      };
      ck.check(forward_diff(f, *z, h),
               n * gen_pow(*z, n - 1, h, PowerKind::backward),
               {{"z", *z}, {"n", double(n)}, {"h", h}});
    }
  }
}

void id_diffops_lowering_backward(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const int n = rng.uniform_int(1, 10);
      const auto z = draw_separated(rng, ck, g, h, n + 1);
      if (!z) continue;
      const auto f = [n, h](double t) {
        return gen_pow(t, n, h, PowerKind::forward);
      };
      ck.check(backward_diff(f, *z, h),
               n * gen_pow(*z, n - 1, h, PowerKind::forward),
               {{"z", *z}, {"n", double(n)}, {"h", h}});
    }
  }
}

void id_diffops_lowering_central(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const int n = rng.uniform_int(1, 10);
      const auto z = draw_separated(rng, ck, g, h, n + 1);
      if (!z) continue;
      const auto f = [n, h](double t) {
        return gen_pow(t, n, h, PowerKind::central);
      };
      ck.check(central_diff(f, *z, h),
               n * gen_pow(*z, n - 1, h, PowerKind::central),
               {{"z", *z}, {"n", double(n)}, {"h", h}});
    }
  }
}

void id_diffops_eigen_forward(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x = draw_sub_domain(rng, ck, g, h);
      if (!x) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const auto f = [&](double t) { return e_sub(*x, t, h); };
      ck.check(forward_diff(f, y, h), *x * e_sub(*x, y, h),
               {{"x", *x}, {"y", y}, {"h", h}});
    }
  }
}

void id_diffops_eigen_backward(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      // The backward operator pairs with e_{-h}; its domain is 1 - h x > 0.
      const auto x = draw_sub_domain(rng, ck, g, -h);
      if (!x) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const auto f = [&](double t) { return e_sub(*x, t, -h); };
      ck.check(backward_diff(f, y, h), *x * e_sub(*x, y, -h),
               {{"x", *x}, {"y", y}, {"h", h}});
    }
  }
}

void id_diffops_eigen_central(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double x = rng.uniform(g.x_lo, g.x_hi);
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const auto f = [&](double t) { return e_sup(x, t, h); };
      ck.check(central_diff(f, y, h), x * e_sup(x, y, h),
               {{"x", x}, {"y", y}, {"h", h}});
    }
  }
}

// ---------------------------------------------------------------------------
// Deformed arithmetic
// ---------------------------------------------------------------------------

void id_defarith_sub_commutative(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto a = draw_sub_domain(rng, ck, g, h);
      const auto b = draw_sub_domain(rng, ck, g, h);
      if (!a || !b) continue;
      ck.check(oplus_sub(*a, *b, h), oplus_sub(*b, *a, h),
               {{"x1", *a}, {"x2", *b}, {"h", h}});
    }
  }
}

void id_defarith_sub_associative(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto a = draw_sub_domain(rng, ck, g, h);
      const auto b = draw_sub_domain(rng, ck, g, h);
      const auto c = draw_sub_domain(rng, ck, g, h);
      if (!a || !b || !c) continue;
      ck.check(oplus_sub(oplus_sub(*a, *b, h), *c, h),
               oplus_sub(*a, oplus_sub(*b, *c, h), h),
               {{"x1", *a}, {"x2", *b}, {"x3", *c}, {"h", h}});
    }
  }
}

void id_defarith_sub_neutral(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto a = draw_sub_domain(rng, ck, g, h);
      if (!a) continue;
      ck.check(oplus_sub(*a, 0.0, h), *a, {{"x", *a}, {"h", h}});
      ck.check(oplus_sub(0.0, *a, h), *a, {{"x", *a}, {"h", h}});
    }
  }
}

void id_defarith_sub_inverse(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto a = draw_sub_domain(rng, ck, g, h);
      if (!a) continue;
      ck.check(oplus_sub(*a, neg_sub(*a, h), h), 0.0, {{"x", *a}, {"h", h}});
    }
  }
}

void id_defarith_sub_ominus(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto a = draw_sub_domain(rng, ck, g, h);
      const auto b = draw_sub_domain(rng, ck, g, h);
      if (!a || !b) continue;
      ck.check(ominus_sub(*a, *b, h), oplus_sub(*a, neg_sub(*b, h), h),
               {{"x1", *a}, {"x2", *b}, {"h", h}});
    }
  }
}

void id_defarith_sup_commutative(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double a = rng.uniform(g.x_lo, g.x_hi);
      const double b = rng.uniform(g.x_lo, g.x_hi);
      ck.check(oplus_sup(a, b, h), oplus_sup(b, a, h),
               {{"x1", a}, {"x2", b}, {"h", h}});
    }
  }
}

void id_defarith_sup_associative(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double a = rng.uniform(g.x_lo, g.x_hi);
      const double b = rng.uniform(g.x_lo, g.x_hi);
      const double c = rng.uniform(g.x_lo, g.x_hi);
      ck.check(oplus_sup(oplus_sup(a, b, h), c, h),
               oplus_sup(a, oplus_sup(b, c, h), h),
               {{"x1", a}, {"x2", b}, {"x3", c}, {"h", h}});
    }
  }
}

void id_defarith_sup_neutral(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double a = rng.uniform(g.x_lo, g.x_hi);
      ck.check(oplus_sup(a, 0.0, h), a, {{"x", a}, {"h", h}});
      ck.check(oplus_sup(0.0, a, h), a, {{"x", a}, {"h", h}});
    }
  }
}

void id_defarith_sup_inverse(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double a = rng.uniform(g.x_lo, g.x_hi);
      ck.check(oplus_sup(a, -a, h), 0.0, {{"x", a}, {"h", h}});
    }
  }
}

void id_defarith_sup_ominus(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double a = rng.uniform(g.x_lo, g.x_hi);
      const double b = rng.uniform(g.x_lo, g.x_hi);
      ck.check(ominus_sup(a, b, h), oplus_sup(a, -b, h),
               {{"x1", a}, {"x2", b}, {"h", h}});
    }
  }
}

void id_defarith_sub_homomorphism(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto a = draw_sub_domain(rng, ck, g, h);
      const auto b = draw_sub_domain(rng, ck, g, h);
      if (!a || !b) continue;
      ck.check(brace_sub(*a, h) + brace_sub(*b, h),
               brace_sub(oplus_sub(*a, *b, h), h),
               {{"x1", *a}, {"x2", *b}, {"h", h}});
    }
  }
}

void id_defarith_sup_homomorphism(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double a = rng.uniform(g.x_lo, g.x_hi);
      const double b = rng.uniform(g.x_lo, g.x_hi);
      ck.check(brace_sup(a, h) + brace_sup(b, h),
               brace_sup(oplus_sup(a, b, h), h),
               {{"x1", a}, {"x2", b}, {"h", h}});
    }
  }
}

void id_defarith_sub_classical_limit(const GridSpec& g, Rng& rng, Checker& ck) {
  // |oplus_sub(a,b,h) - (a+b)| must shrink linearly in h: successive ratios
  // near 10 across h = 0.1, 0.01, 0.001 (error indicator is 0/1).
  for (int i = 0; i < g.samples_per_h; ++i) {
    const auto a = draw_if(rng, ck, g.x_lo, g.x_hi,
                           [](double v) { return std::fabs(v) >= 0.1; });
    const auto b = draw_if(rng, ck, g.x_lo, g.x_hi,
                           [](double v) { return std::fabs(v) >= 0.1; });
    if (!a || !b) continue;
    double err[3];
    const double hs[3] = {0.1, 0.01, 0.001};
    for (int k = 0; k < 3; ++k) {
      err[k] = std::fabs(oplus_sub(*a, *b, hs[k]) - (*a + *b));
    }
    bool ok = err[1] > 0.0 && err[2] > 0.0;
    for (int k = 0; k + 1 < 3 && ok; ++k) {
      const double ratio = err[k] / err[k + 1];
      ok = ratio >= 5.0 && ratio <= 20.0;
    }
    ck.require(ok, {{"x1", *a}, {"x2", *b}});
  }
}

// ---------------------------------------------------------------------------
// Deformed exponentials
// ---------------------------------------------------------------------------

void id_defexp_sub_neutral(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x = draw_sub_domain(rng, ck, g, h);
      if (!x) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.check(e_sub(0.0, y, h), 1.0, {{"y", y}, {"h", h}});
      ck.check(e_sub(*x, 0.0, h), 1.0, {{"x", *x}, {"h", h}});
    }
  }
}

void id_defexp_sup_neutral(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double x = rng.uniform(g.x_lo, g.x_hi);
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.check(e_sup(0.0, y, h), 1.0, {{"y", y}, {"h", h}});
      ck.check(e_sup(x, 0.0, h), 1.0, {{"x", x}, {"h", h}});
    }
  }
}

void id_defexp_sub_positive(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x = draw_sub_domain(rng, ck, g, h);
      if (!x) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.require(e_sub(*x, y, h) > 0.0, {{"x", *x}, {"y", y}, {"h", h}});
    }
  }
}

void id_defexp_sup_positive(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double x = rng.uniform(g.x_lo, g.x_hi);
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.require(e_sup(x, y, h) > 0.0, {{"x", x}, {"y", y}, {"h", h}});
    }
  }
}

void id_defexp_sub_additive_y(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x = draw_sub_domain(rng, ck, g, h);
      if (!x) continue;
      const double y1 = rng.uniform(g.y_lo, g.y_hi);
      const double y2 = rng.uniform(g.y_lo, g.y_hi);
      ck.check(e_sub(*x, y1 + y2, h), e_sub(*x, y1, h) * e_sub(*x, y2, h),
               {{"x", *x}, {"y1", y1}, {"y2", y2}, {"h", h}});
    }
  }
}

void id_defexp_sup_additive_y(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double x = rng.uniform(g.x_lo, g.x_hi);
      const double y1 = rng.uniform(g.y_lo, g.y_hi);
      const double y2 = rng.uniform(g.y_lo, g.y_hi);
      ck.check(e_sup(x, y1 + y2, h), e_sup(x, y1, h) * e_sup(x, y2, h),
               {{"x", x}, {"y1", y1}, {"y2", y2}, {"h", h}});
    }
  }
}

void id_defexp_sub_reflection(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      // Both sides need 1 - h x > 0.
      const auto x = draw_sub_domain(rng, ck, g, -h);
      if (!x) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.check(e_sub(*x, y, -h), e_sub(-*x, -y, h),
               {{"x", *x}, {"y", y}, {"h", h}});
    }
  }
}

void id_defexp_sup_h_parity(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double x = rng.uniform(g.x_lo, g.x_hi);
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.check(e_sup(x, y, -h), e_sup(x, y, h),
               {{"x", x}, {"y", y}, {"h", h}});
    }
  }
}

void id_defexp_sub_oplus_product(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x1 = draw_sub_domain(rng, ck, g, h);
      const auto x2 = draw_sub_domain(rng, ck, g, h);
      if (!x1 || !x2) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.check(e_sub(oplus_sub(*x1, *x2, h), y, h),
               e_sub(*x1, y, h) * e_sub(*x2, y, h),
               {{"x1", *x1}, {"x2", *x2}, {"y", y}, {"h", h}});
    }
  }
}

void id_defexp_sub_first_arg_product(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x1 = draw_sub_domain(rng, ck, g, h);
      const auto x2 = draw_sub_domain(rng, ck, g, h);
      if (!x1 || !x2) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.check(e_sub(*x1, y, h) * e_sub(*x2, y, h),
               e_sub(*x1 + *x2 + h * *x1 * *x2, y, h),
               {{"x1", *x1}, {"x2", *x2}, {"y", y}, {"h", h}});
    }
  }
}

void id_defexp_sub_ominus_product(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x1 = draw_sub_domain(rng, ck, g, h);
      const auto x2 = draw_sub_domain(rng, ck, g, h);
      if (!x1 || !x2) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.check(e_sub(ominus_sub(*x1, *x2, h), y, h),
               e_sub(*x1, y, h) * e_sub(*x2, -y, h),
               {{"x1", *x1}, {"x2", *x2}, {"y", y}, {"h", h}});
    }
  }
}

void id_defexp_sup_oplus_product(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double x1 = rng.uniform(g.x_lo, g.x_hi);
      const double x2 = rng.uniform(g.x_lo, g.x_hi);
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.check(e_sup(oplus_sup(x1, x2, h), y, h),
               e_sup(x1, y, h) * e_sup(x2, y, h),
               {{"x1", x1}, {"x2", x2}, {"y", y}, {"h", h}});
    }
  }
}

void id_defexp_sup_ominus_product(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double x1 = rng.uniform(g.x_lo, g.x_hi);
      const double x2 = rng.uniform(g.x_lo, g.x_hi);
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const double lhs = e_sup(ominus_sup(x1, x2, h), y, h);
      ck.check(lhs, e_sup(x1, y, h) * e_sup(x2, -y, h),
               {{"x1", x1}, {"x2", x2}, {"y", y}, {"h", h}});
      ck.check(lhs, e_sup(x1, y, h) * e_sup(-x2, y, h),
               {{"x1", x1}, {"x2", x2}, {"y", y}, {"h", h}});
    }
  }
}

void id_defexp_connection(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double x = rng.uniform(g.x_lo, g.x_hi);
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.check(e_sup(x, y, h), e_sub(sub_to_sup_shift(x, h), y, h),
               {{"x", x}, {"y", y}, {"h", h}});
    }
  }
}

void id_defexp_sub_log_form(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x = draw_sub_domain(rng, ck, g, h);
      if (!x) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.check(e_sub(*x, y, h), std::pow(1.0 + h * *x, y / h),
               {{"x", *x}, {"y", y}, {"h", h}});
    }
  }
}

void id_defexp_sup_log_form(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double x = rng.uniform(g.x_lo, g.x_hi);
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const double base = h * x + std::sqrt(1.0 + h * h * x * x);
      ck.check(e_sup(x, y, h), std::pow(base, y / h),
               {{"x", x}, {"y", y}, {"h", h}});
    }
  }
}

void id_defexp_tsallis_case(const GridSpec& g, Rng& rng, Checker& ck) {
  const double qs[] = {-1.0, 0.0, 0.5, 2.0, 3.0};
  for (double q : qs) {
    const double h = 1.0 - q;
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x = draw_sub_domain(rng, ck, g, h);
      if (!x) continue;
      ck.check(tsallis_q_exp(*x, q), std::pow(1.0 + h * *x, 1.0 / h),
               {{"x", *x}, {"q", q}});
      // Beyond the support boundary the q-exponential is cut off to 0;
      // 1 + h*(-1.5/h) = -0.5 regardless of the sign of h.
      const double beyond = -1.5 / h;
      ck.check(tsallis_q_exp(beyond, q), 0.0, {{"x", beyond}, {"q", q}});
    }
  }
  for (int i = 0; i < g.samples_per_h; ++i) {
    const double x = rng.uniform(g.x_lo, g.x_hi);
    ck.check(tsallis_q_exp(x, 1.0), std::exp(x), {{"x", x}, {"q", 1.0}});
  }
}

void id_defexp_kaniadakis_case(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double kappa : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double x = rng.uniform(g.x_lo, g.x_hi);
      const double base =
          kappa * x + std::sqrt(1.0 + kappa * kappa * x * x);
      ck.check(kaniadakis_exp(x, kappa), std::pow(base, 1.0 / kappa),
               {{"x", x}, {"kappa", kappa}});
    }
  }
  for (int i = 0; i < g.samples_per_h; ++i) {
    const double x = rng.uniform(g.x_lo, g.x_hi);
    ck.check(kaniadakis_exp(x, 0.0), std::exp(x), {{"x", x}, {"kappa", 0.0}});
  }
}

void id_defexp_quantum_group_case(const GridSpec& g, Rng& rng, Checker& ck) {
  const double ps[] = {0.25, 0.5, 2.0, 4.0};
  for (double p : ps) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double y = rng.uniform(g.y_lo, g.y_hi);
      ck.check(quantum_group_exp(y, p), std::pow(p, y / (p - 1.0)),
               {{"y", y}, {"p", p}});
    }
  }
  for (int i = 0; i < g.samples_per_h; ++i) {
    const double y = rng.uniform(g.y_lo, g.y_hi);
    ck.check(quantum_group_exp(y, 1.0), std::exp(y), {{"y", y}, {"p", 1.0}});
  }
}

// Classical-limit signatures at the fixed probe (x, y) = (0.3, 1.7).
// e_sub approaches exp(x y) linearly in h: successive error ratios near 10.
void id_defexp_sub_classical(const GridSpec&, Rng&, Checker& ck) {
  const double x = 0.3, y = 1.7;
  const double target = std::exp(x * y);
  const double hs[3] = {0.1, 0.01, 0.001};
  double err[3];
  for (int k = 0; k < 3; ++k) err[k] = std::fabs(e_sub(x, y, hs[k]) - target);
  for (int k = 0; k + 1 < 3; ++k) {
    const double ratio = err[k] / err[k + 1];
    ck.require(ratio >= 5.0 && ratio <= 20.0, {{"h", hs[k]}, {"ratio", ratio}});
  }
}

// e_sup is even in h, so its classical-limit error is quadratic: successive
// ratios near 100.
void id_defexp_sup_classical(const GridSpec&, Rng&, Checker& ck) {
  const double x = 0.3, y = 1.7;
  const double target = std::exp(x * y);
  const double hs[3] = {0.1, 0.01, 0.001};
  double err[3];
  for (int k = 0; k < 3; ++k) err[k] = std::fabs(e_sup(x, y, hs[k]) - target);
  for (int k = 0; k + 1 < 3; ++k) {
    const double ratio = err[k] / err[k + 1];
    ck.require(ratio >= 50.0 && ratio <= 200.0,
               {{"h", hs[k]}, {"ratio", ratio}});
  }
}

// ---------------------------------------------------------------------------
// Series expansions
// ---------------------------------------------------------------------------

std::optional<double> draw_x_for_series(Rng& rng, Checker& ck,
                                        const GridSpec& g, double h,
                                        double hx_cap) {
  return draw_if(rng, ck, g.x_lo, g.x_hi,
                 [&](double x) { return std::fabs(h * x) <= hx_cap; });
}

void id_series_sub_agrees(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x = draw_x_for_series(rng, ck, g, h, 0.5);
      if (!x) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const SeriesResult r = expand_e_sub(*x, y, h);
      ck.check(r.value, e_sub(*x, y, h), {{"x", *x}, {"y", y}, {"h", h}});
    }
  }
}

void id_series_sub_neg_agrees(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x = draw_x_for_series(rng, ck, g, h, 0.5);
      if (!x) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const SeriesResult r = expand_e_sub_neg(*x, y, h);
      ck.check(r.value, e_sub(*x, y, -h), {{"x", *x}, {"y", y}, {"h", h}});
    }
  }
}

void id_series_sup_agrees(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x = draw_x_for_series(rng, ck, g, h, 0.5);
      if (!x) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const SeriesResult r = expand_e_sup(*x, y, h);
      ck.check(r.value, e_sup(*x, y, h), {{"x", *x}, {"y", y}, {"h", h}});
    }
  }
}

// |h x| in [0.05, 0.25]: the upper cap keeps the finite binomial sum well
// conditioned at the 1e-13 comparison tolerance, the lower cap keeps the
// last nonzero term above the stopping threshold so the zero factor, not the
// tolerance, ends the sum.
std::optional<double> draw_x_for_termination(Rng& rng, Checker& ck,
                                             const GridSpec& g, double h) {
  return draw_if(rng, ck, g.x_lo, g.x_hi, [&](double x) {
    const double hx = std::fabs(h * x);
    return hx >= 0.05 && hx <= 0.25;
  });
}

void id_series_sub_exact_termination(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const int m = rng.uniform_int(0, 10);
      const double y = m * h;
      const auto x = draw_x_for_termination(rng, ck, g, h);
      if (!x) continue;
      const SeriesResult r = expand_e_sub(*x, y, h, 100, 1e-15);
      ck.require(r.terminated_exactly && r.terms_used == m + 1 &&
                     r.tail_estimate == 0.0,
                 {{"x", *x}, {"m", double(m)}, {"h", h}});
      ck.check(r.value, std::pow(1.0 + h * *x, m),
               {{"x", *x}, {"m", double(m)}, {"h", h}});
    }
  }
}

void id_series_sub_neg_exact_termination(const GridSpec& g, Rng& rng,
                                         Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const int m = rng.uniform_int(0, 10);
      const double y = -m * h;
      const auto x = draw_x_for_termination(rng, ck, g, h);
      if (!x) continue;
      const SeriesResult r = expand_e_sub_neg(*x, y, h, 100, 1e-15);
      ck.require(r.terminated_exactly && r.terms_used == m + 1 &&
                     r.tail_estimate == 0.0,
                 {{"x", *x}, {"m", double(m)}, {"h", h}});
      ck.check(r.value, std::pow(1.0 - h * *x, m),
               {{"x", *x}, {"m", double(m)}, {"h", h}});
    }
  }
}

void id_series_recurrence(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const auto fwd = recurrence_coefficients(y, h, 10, LoweringOp::forward);
      const auto cen = recurrence_coefficients(y, h, 10, LoweringOp::central);
      for (int n = 0; n <= 10; ++n) {
        ck.check(fwd[n], gen_pow(y, n, h, PowerKind::backward),
                 {{"y", y}, {"n", double(n)}, {"h", h}});
        ck.check(cen[n], gen_pow(y, n, h, PowerKind::central),
                 {{"y", y}, {"n", double(n)}, {"h", h}});
      }
    }
  }
}

// Beyond the largest term the magnitudes must not grow: that is what makes
// the first omitted term a sound tail proxy.
void check_monotone_beyond_peak(Checker& ck, const std::vector<double>& mags,
                                std::initializer_list<Pt> at) {
  std::size_t peak = 0;
  for (std::size_t k = 1; k < mags.size(); ++k) {
    if (mags[k] > mags[peak]) peak = k;
  }
  bool ok = true;
  for (std::size_t k = peak; k + 1 < mags.size() && ok; ++k) {
    ok = mags[k + 1] <= mags[k];
  }
  ck.require(ok, at);
}

void id_series_monotone_tail(const GridSpec& g, Rng& rng, Checker& ck) {
  constexpr int kTerms = 60;
  for (double h : h_list(g, false)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x = draw_x_for_series(rng, ck, g, h, 0.5);
      if (!x) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);

      std::vector<double> sub_mags, even_mags, odd_mags;
      double t = 1.0;
      for (int n = 0; n < kTerms; ++n) {
        sub_mags.push_back(std::fabs(t));
        t = t * *x * (y - n * h) / (n + 1);
      }
      double te = 1.0, to = *x * y;
      for (int n = 0; n < kTerms; n += 2) {
        even_mags.push_back(std::fabs(te));
        te = te * (*x * (y - n * h)) * (*x * (y + n * h)) /
             (static_cast<double>(n + 1) * (n + 2));
      }
      for (int n = 1; n < kTerms; n += 2) {
        odd_mags.push_back(std::fabs(to));
        to = to * (*x * (y - n * h)) * (*x * (y + n * h)) /
             (static_cast<double>(n + 1) * (n + 2));
      }
      check_monotone_beyond_peak(ck, sub_mags, {{"x", *x}, {"y", y}, {"h", h}});
      check_monotone_beyond_peak(ck, even_mags,
                                 {{"x", *x}, {"y", y}, {"h", h}});
      check_monotone_beyond_peak(ck, odd_mags, {{"x", *x}, {"y", y}, {"h", h}});
    }
  }
}

// ---------------------------------------------------------------------------
// Deformed calculus
// ---------------------------------------------------------------------------

void id_defcalc_eigen_sub(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x = draw_sub_domain(rng, ck, g, h, 0.1);
      if (!x) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const auto f = [&](double t) { return e_sub(t, y, h); };
      ck.check(deformed_derivative(f, *x, h, DerivKind::sub, 1e-6),
               deformed_derivative_analytic(DerivKind::sub, Family::sub, *x, y,
                                            h),
               {{"x", *x}, {"y", y}, {"h", h}});
    }
  }
}

void id_defcalc_eigen_sup(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double x = rng.uniform(g.x_lo, g.x_hi);
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const auto f = [&](double t) { return e_sup(t, y, h); };
      ck.check(deformed_derivative(f, x, h, DerivKind::sup, 1e-6),
               deformed_derivative_analytic(DerivKind::sup, Family::sup, x, y,
                                            h),
               {{"x", x}, {"y", y}, {"h", h}});
    }
  }
}

void id_defcalc_partial_y_sub(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const auto x = draw_sub_domain(rng, ck, g, h, 0.1);
      if (!x) continue;
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const double s = 1e-6;
      const double fd = (e_sub(*x, y + s, h) - e_sub(*x, y - s, h)) / (2 * s);
      ck.check(fd, partial_y_factor(*x, h, Family::sub) * e_sub(*x, y, h),
               {{"x", *x}, {"y", y}, {"h", h}});
    }
  }
}

void id_defcalc_partial_y_sup(const GridSpec& g, Rng& rng, Checker& ck) {
  for (double h : h_list(g, true)) {
    for (int i = 0; i < g.samples_per_h; ++i) {
      const double x = rng.uniform(g.x_lo, g.x_hi);
      const double y = rng.uniform(g.y_lo, g.y_hi);
      const double s = 1e-6;
      const double fd = (e_sup(x, y + s, h) - e_sup(x, y - s, h)) / (2 * s);
      ck.check(fd, partial_y_factor(x, h, Family::sup) * e_sup(x, y, h),
               {{"x", x}, {"y", y}, {"h", h}});
    }
  }
}

// Halving the step of the symmetric difference must shrink the error by a
// factor in [2, 8] while truncation dominates (second-order signature).
void id_defcalc_step_halving(const GridSpec&, Rng&, Checker& ck) {
  struct Probe {
    double x, y, h;
    DerivKind kind;
    Family family;
  };
  const Probe probes[] = {
      {0.4, 1.3, 0.5, DerivKind::sub, Family::sub},
      {0.6, -1.1, 0.7, DerivKind::sup, Family::sup},
  };
  for (const Probe& p : probes) {
    const double exact =
        deformed_derivative_analytic(p.kind, p.family, p.x, p.y, p.h);
    const auto f = [&](double t) {
      return p.family == Family::sub ? e_sub(t, p.y, p.h) : e_sup(t, p.y, p.h);
    };
    double err[4];
    double s = 1e-2;
    for (int k = 0; k < 4; ++k, s *= 0.5) {
      err[k] = std::fabs(deformed_derivative(f, p.x, p.h, p.kind, s) - exact);
    }
    for (int k = 0; k < 3; ++k) {
      const double ratio = err[k] / err[k + 1];
      ck.require(err[k + 1] > 0.0 && ratio >= 2.0 && ratio <= 8.0,
                 {{"x", p.x}, {"h", p.h}, {"ratio", ratio}});
    }
  }
}

void id_defcalc_classical_prefactor(const GridSpec& g, Rng& rng, Checker& ck) {
  for (int i = 0; i < g.samples_per_h; ++i) {
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    const double z = rng.uniform(g.x_lo, g.x_hi);
    const auto f = [&](double t) { return a * t * t + b * t; };
    for (DerivKind kind : {DerivKind::sub, DerivKind::sup}) {
      ck.check(deformed_derivative(f, z, 0.0, kind, default_fd_step(z)),
               2.0 * a * z + b, {{"a", a}, {"b", b}, {"z", z}});
    }
  }
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

using IdentityFn = void (*)(const GridSpec&, Rng&, Checker&);

struct Identity {
  const char* id;
  const char* description;
  double tolerance;
  IdentityFn run;
};

constexpr double kIndicatorTol = 0.5;

const Identity kRegistry[] = {
    {"genpow.reflection",
     "z^(n,h) = z^[n,-h] and z^[n,h] = z^(n,-h)", 1e-12, id_genpow_reflection},
    {"genpow.central_parity", "z^<n,h> = z^<n,-h>", 1e-12,
     id_genpow_central_parity},
    {"genpow.central_via_backward",
     "z^<n,h> = z * (z+(n-2)h)^(n-1, 2h)", 1e-12,
     id_genpow_central_via_backward},
    {"genpow.central_split_even", "z^<2m,h> = z^(m,2h) z^[m,2h]", 1e-12,
     id_genpow_central_split_even},
    {"genpow.central_split_odd",
     "z^<2m+1,h> = z (z-h)^(m,2h) (z+h)^[m,2h]", 1e-12,
     id_genpow_central_split_odd},
    {"genpow.even_odd_product",
     "z^<2m,h> z^<2m+1,h> = z z^(2m,h) z^[2m,h]", 1e-12,
     id_genpow_even_odd_product},
    {"genpow.binomial_link", "z^(n,h) / (h^n n!) = C(z/h, n)", 1e-12,
     id_genpow_binomial_link},
    {"genpow.h_zero", "gen_pow(z,n,0,kind) = z^n for every kind", 1e-15,
     id_genpow_h_zero},

    {"diffops.backward_as_forward",
     "backward_diff(f,z,h) = forward_diff(f,z,-h) = forward_diff(f,z-h,h)",
     1e-12, id_diffops_backward_as_forward},
    {"diffops.central_symmetry",
     "central_diff(f,z,-h) = central_diff(f,z,h)", 1e-14,
     id_diffops_central_symmetry},
    {"diffops.lowering_forward",
     "forward_diff of z^(n,h) equals n z^(n-1,h)", 1e-10,
     id_diffops_lowering_forward},
    {"diffops.lowering_backward",
     "backward_diff of z^[n,h] equals n z^[n-1,h]", 1e-10,
     id_diffops_lowering_backward},
    {"diffops.lowering_central",
     "central_diff of z^<n,h> equals n z^<n-1,h>", 1e-10,
     id_diffops_lowering_central},
    {"diffops.eigen_forward",
     "forward_diff in y of e_sub(x,y,h) equals x e_sub(x,y,h)", 1e-10,
     id_diffops_eigen_forward},
    {"diffops.eigen_backward",
     "backward_diff in y of e_sub(x,y,-h) equals x e_sub(x,y,-h)", 1e-10,
     id_diffops_eigen_backward},
    {"diffops.eigen_central",
     "central_diff in y of e_sup(x,y,h) equals x e_sup(x,y,h)", 1e-10,
     id_diffops_eigen_central},

    {"defarith.sub_commutative", "x1 (+)_h x2 = x2 (+)_h x1", 1e-12,
     id_defarith_sub_commutative},
    {"defarith.sub_associative",
     "(x1 (+)_h x2) (+)_h x3 = x1 (+)_h (x2 (+)_h x3)", 1e-12,
     id_defarith_sub_associative},
    {"defarith.sub_neutral", "x (+)_h 0 = 0 (+)_h x = x", 1e-12,
     id_defarith_sub_neutral},
    {"defarith.sub_inverse", "x (+)_h neg_sub(x) = 0", 1e-12,
     id_defarith_sub_inverse},
    {"defarith.sub_ominus",
     "x1 (-)_h x2 = x1 (+)_h neg_sub(x2)", 1e-12, id_defarith_sub_ominus},
    {"defarith.sup_commutative", "x1 (+)^h x2 = x2 (+)^h x1", 1e-12,
     id_defarith_sup_commutative},
    {"defarith.sup_associative",
     "(x1 (+)^h x2) (+)^h x3 = x1 (+)^h (x2 (+)^h x3)", 1e-12,
     id_defarith_sup_associative},
    {"defarith.sup_neutral", "x (+)^h 0 = 0 (+)^h x = x", 1e-12,
     id_defarith_sup_neutral},
    {"defarith.sup_inverse", "x (+)^h (-x) = 0", 1e-12,
     id_defarith_sup_inverse},
    {"defarith.sup_ominus", "x1 (-)^h x2 = x1 (+)^h (-x2)", 1e-12,
     id_defarith_sup_ominus},
    {"defarith.sub_homomorphism",
     "{x1}_h + {x2}_h = {x1 (+)_h x2}_h", 1e-12, id_defarith_sub_homomorphism},
    {"defarith.sup_homomorphism",
     "{x1}^h + {x2}^h = {x1 (+)^h x2}^h", 1e-12, id_defarith_sup_homomorphism},
    {"defarith.sub_classical_limit",
     "|x1 (+)_h x2 - (x1+x2)| shrinks linearly in h (ratio in [5,20]; 0/1 "
     "indicator)",
     kIndicatorTol, id_defarith_sub_classical_limit},

    {"defexp.sub_neutral", "e_sub(0,y,h) = e_sub(x,0,h) = 1", 1e-14,
     id_defexp_sub_neutral},
    {"defexp.sup_neutral", "e_sup(0,y,h) = e_sup(x,0,h) = 1", 1e-14,
     id_defexp_sup_neutral},
    {"defexp.sub_positive", "e_sub(x,y,h) > 0 on its domain (0/1 indicator)",
     kIndicatorTol, id_defexp_sub_positive},
    {"defexp.sup_positive", "e_sup(x,y,h) > 0 for all real x (0/1 indicator)",
     kIndicatorTol, id_defexp_sup_positive},
    {"defexp.sub_additive_y",
     "e_sub(x,y1+y2,h) = e_sub(x,y1,h) e_sub(x,y2,h)", 1e-12,
     id_defexp_sub_additive_y},
    {"defexp.sup_additive_y",
     "e_sup(x,y1+y2,h) = e_sup(x,y1,h) e_sup(x,y2,h)", 1e-12,
     id_defexp_sup_additive_y},
    {"defexp.sub_reflection", "e_sub(x,y,-h) = e_sub(-x,-y,h)", 1e-14,
     id_defexp_sub_reflection},
    {"defexp.sup_h_parity", "e_sup(x,y,-h) = e_sup(x,y,h)", 1e-14,
     id_defexp_sup_h_parity},
    {"defexp.sub_oplus_product",
     "e_sub(x1 (+)_h x2, y, h) = e_sub(x1,y,h) e_sub(x2,y,h)", 1e-11,
     id_defexp_sub_oplus_product},
    {"defexp.sub_first_arg_product",
     "e_sub(x1,y,h) e_sub(x2,y,h) = e_sub(x1+x2+h x1 x2, y, h)", 1e-11,
     id_defexp_sub_first_arg_product},
    {"defexp.sub_ominus_product",
     "e_sub(x1 (-)_h x2, y, h) = e_sub(x1,y,h) e_sub(x2,-y,h)", 1e-11,
     id_defexp_sub_ominus_product},
    {"defexp.sup_oplus_product",
     "e_sup(x1 (+)^h x2, y, h) = e_sup(x1,y,h) e_sup(x2,y,h)", 1e-11,
     id_defexp_sup_oplus_product},
    {"defexp.sup_ominus_product",
     "e_sup(x1 (-)^h x2, y, h) = e_sup(x1,y,h) e_sup(x2,-y,h) = "
     "e_sup(x1,y,h) e_sup(-x2,y,h)",
     1e-11, id_defexp_sup_ominus_product},
    {"defexp.connection",
     "e_sup(x,y,h) = e_sub(sub_to_sup_shift(x,h), y, h)", 1e-11,
     id_defexp_connection},
    {"defexp.sub_log_form", "e_sub(x,y,h) = (1+hx)^(y/h) via pow", 1e-12,
     id_defexp_sub_log_form},
    {"defexp.sup_log_form",
     "e_sup(x,y,h) = (hx+sqrt(1+h^2x^2))^(y/h) via pow", 1e-12,
     id_defexp_sup_log_form},
    {"defexp.tsallis_case",
     "tsallis_q_exp matches (1+(1-q)x)^(1/(1-q)) with cutoff 0", 1e-12,
     id_defexp_tsallis_case},
    {"defexp.kaniadakis_case",
     "kaniadakis_exp matches (kx+sqrt(1+k^2x^2))^(1/k)", 1e-12,
     id_defexp_kaniadakis_case},
    {"defexp.quantum_group_case",
     "quantum_group_exp(y,p) matches p^(y/(p-1))", 1e-12,
     id_defexp_quantum_group_case},
    {"defexp.sub_classical_limit",
     "|e_sub - exp(xy)| shrinks linearly in h at (0.3, 1.7): ratios in "
     "[5,20] (0/1 indicator)",
     kIndicatorTol, id_defexp_sub_classical},
    {"defexp.sup_classical_limit",
     "|e_sup - exp(xy)| shrinks quadratically in h at (0.3, 1.7): ratios in "
     "[50,200] (0/1 indicator; e_sup is even in h)",
     kIndicatorTol, id_defexp_sup_classical},

    {"series.sub_agrees", "expand_e_sub matches e_sub for |hx| <= 0.5", 1e-10,
     id_series_sub_agrees},
    {"series.sub_neg_agrees",
     "expand_e_sub_neg matches e_sub(x,y,-h) for |hx| <= 0.5", 1e-10,
     id_series_sub_neg_agrees},
    {"series.sup_agrees", "expand_e_sup matches e_sup for |hx| <= 0.5", 1e-10,
     id_series_sup_agrees},
    {"series.sub_exact_termination",
     "y = m h terminates expand_e_sub at m+1 terms with value (1+hx)^m",
     1e-13, id_series_sub_exact_termination},
    {"series.sub_neg_exact_termination",
     "y = -m h terminates expand_e_sub_neg at m+1 terms with value (1-hx)^m",
     1e-13, id_series_sub_neg_exact_termination},
    {"series.recurrence",
     "recurrence coefficients equal the matching generalized powers", 1e-12,
     id_series_recurrence},
    {"series.monotone_tail",
     "term magnitudes decrease beyond the largest term (0/1 indicator)",
     kIndicatorTol, id_series_monotone_tail},

    {"defcalc.eigen_sub",
     "(1+hx) d/dx of e_sub(x,y,h) equals y e_sub(x,y,h)", 1e-6,
     id_defcalc_eigen_sub},
    {"defcalc.eigen_sup",
     "sqrt(1+h^2x^2) d/dx of e_sup(x,y,h) equals y e_sup(x,y,h)", 1e-6,
     id_defcalc_eigen_sup},
    {"defcalc.partial_y_sub",
     "d/dy of e_sub(x,y,h) equals {x}_h e_sub(x,y,h)", 1e-6,
     id_defcalc_partial_y_sub},
    {"defcalc.partial_y_sup",
     "d/dy of e_sup(x,y,h) equals {x}^h e_sup(x,y,h)", 1e-6,
     id_defcalc_partial_y_sup},
    {"defcalc.step_halving",
     "halving fd_step shrinks the eigen-relation error by [2,8] (0/1 "
     "indicator)",
     kIndicatorTol, id_defcalc_step_halving},
    {"defcalc.classical_prefactor",
     "at h = 0 both deformed derivatives reduce to the plain derivative",
     1e-9, id_defcalc_classical_prefactor},
};

constexpr int kRegistrySize = static_cast<int>(std::size(kRegistry));

const Identity* find_identity(const std::string& id) {
  for (const Identity& e : kRegistry) {
    if (id == e.id) return &e;
  }
  return nullptr;
}

IdentityReport run_entry(const Identity& entry, const GridSpec& grid,
                         double tolerance) {
  const double tol = tolerance > 0.0 ? tolerance : entry.tolerance;
  Rng rng(mix_seed(grid.seed, entry.id), grid.mode);
  Checker ck;
  entry.run(grid, rng, ck);
  if (ck.samples() == 0) {
    throw EmptyGrid(std::string("identity '") + entry.id +
                    "' has no admissible sample point on the requested grid");
  }
  IdentityReport r;
  r.identity_id = entry.id;
  r.grid_spec = grid.describe();
  r.samples = ck.samples();
  r.skipped = ck.skipped();
  r.max_abs_err = ck.max_abs();
  r.max_rel_err = ck.max_rel();
  r.max_scaled_err = ck.max_scaled();
  r.tolerance = tol;
  r.passed = ck.max_scaled() <= tol;
  r.worst_point = ck.worst();
  return r;
}

std::vector<IdentityReport> run_entries(const std::vector<const Identity*>& sel,
                                        const GridSpec& grid) {
  std::vector<IdentityReport> out(sel.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned nthreads = static_cast<unsigned>(
      std::max<std::size_t>(1, std::min(hw, sel.size())));

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= sel.size()) return;
      try {
        out[i] = run_entry(*sel[i], grid, 0.0);
      } catch (...) {
        std::lock_guard<std::mutex> lk(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

std::string GridSpec::describe() const {
  std::ostringstream os;
  os << "x in [" << num_str(x_lo) << ", " << num_str(x_hi) << "], y in ["
     << num_str(y_lo) << ", " << num_str(y_hi) << "], h in {";
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    if (i) os << ", ";
    os << num_str(h_values[i]);
  }
  os << "}, " << samples_per_h << " samples per h, "
     << (mode == SampleMode::random
             ? "random mode at seed " + std::to_string(seed)
             : std::string("uniform (Weyl sequence) mode"))
     << "; domain and conditioning guards skip-and-count";
  return os.str();
}

std::vector<std::string> identity_ids() {
  std::vector<std::string> ids;
  ids.reserve(kRegistrySize);
  for (const Identity& e : kRegistry) ids.emplace_back(e.id);
  return ids;
}

int identity_count() { return kRegistrySize; }

const char* identity_id_cstr(int index) {
  if (index < 0 || index >= kRegistrySize) return nullptr;
  return kRegistry[index].id;
}

std::string identity_description(const std::string& id) {
  const Identity* e = find_identity(id);
  if (!e) throw UnknownIdentity("unknown identity '" + id + "'");
  return e->description;
}

double identity_default_tolerance(const std::string& id) {
  const Identity* e = find_identity(id);
  if (!e) throw UnknownIdentity("unknown identity '" + id + "'");
  return e->tolerance;
}

bool glob_match(const std::string& pattern, const std::string& text) {
  std::size_t pi = 0, ti = 0;
  std::size_t star = std::string::npos, mark = 0;
  while (ti < text.size()) {
    if (pi < pattern.size() &&
        (pattern[pi] == '?' || pattern[pi] == text[ti])) {
      ++pi;
      ++ti;
    } else if (pi < pattern.size() && pattern[pi] == '*') {
      star = pi++;
      mark = ti;
    } else if (star != std::string::npos) {
      pi = star + 1;
      ti = ++mark;
    } else {
      return false;
    }
  }
  while (pi < pattern.size() && pattern[pi] == '*') ++pi;
  return pi == pattern.size();
}

IdentityReport run_identity(const std::string& id, const GridSpec& grid,
                            double tolerance) {
  const Identity* e = find_identity(id);
  if (!e) throw UnknownIdentity("unknown identity '" + id + "'");
  return run_entry(*e, grid, tolerance);
}

std::vector<IdentityReport> run_all(const GridSpec& grid) {
  std::vector<const Identity*> sel;
  sel.reserve(kRegistrySize);
  for (const Identity& e : kRegistry) sel.push_back(&e);
  return run_entries(sel, grid);
}

std::vector<IdentityReport> run_matching(const std::string& pattern,
                                         const GridSpec& grid) {
  std::vector<const Identity*> sel;
  for (const Identity& e : kRegistry) {
    if (glob_match(pattern, e.id)) sel.push_back(&e);
  }
  if (sel.empty()) {
    throw UnknownIdentity("pattern '" + pattern + "' matches no identity");
  }
  return run_entries(sel, grid);
}

bool all_passed(const std::vector<IdentityReport>& reports) {
  for (const IdentityReport& r : reports) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace defexp
