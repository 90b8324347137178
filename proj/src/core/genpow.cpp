#include "genpow.hpp"

#include <string>

#include "errors.hpp"
#include "numeric.hpp"

namespace defexp {

namespace {

double plain_pow(double z, int n) {
  double acc = 1.0;
  for (int k = 0; k < n; ++k) acc *= z;
  return acc;
}

}  // namespace

double gen_pow(double z, int n, double h, PowerKind kind) {
  require_finite(z, "z", "gen_pow");
  require_finite(h, "h", "gen_pow");
  if (n < 0) {
    throw InvalidArgument("gen_pow: n must be nonnegative, got " + std::to_string(n));
  }
  if (n == 0) return 1.0;
  if (h == 0.0) return plain_pow(z, n);

  switch (kind) {
    case PowerKind::backward: {
      double acc = 1.0;
      for (int k = 0; k < n; ++k) acc *= z - k * h;
      return acc;
    }
    case PowerKind::forward: {
      double acc = 1.0;
      for (int k = 0; k < n; ++k) acc *= z + k * h;
      return acc;
    }
    case PowerKind::central: {
      const bool odd = (n % 2) != 0;
      double acc = odd ? z : 1.0;
      const int pairs = n / 2;
      for (int k = 0; k < pairs; ++k) {
        const double s = (2 * k + (odd ? 1 : 0)) * h;
        acc *= (z - s) * (z + s);
      }
      return acc;
    }
  }
  throw InvalidArgument("gen_pow: unknown power kind");
}

double binom_via_gen_pow(double z, int n, double h) {
  require_finite(z, "z", "binom_via_gen_pow");
  require_finite(h, "h", "binom_via_gen_pow");
  if (n < 0) {
    throw InvalidArgument("binom_via_gen_pow: n must be nonnegative, got " +
                          std::to_string(n));
  }
  if (h == 0.0) {
    throw InvalidArgument("binom_via_gen_pow: h must be nonzero");
  }
  // h^n n! accumulated as a single product of h*k factors.
  double denom = 1.0;
  for (int k = 1; k <= n; ++k) denom *= h * k;
  return gen_pow(z, n, h, PowerKind::backward) / denom;
}

}  // namespace defexp
