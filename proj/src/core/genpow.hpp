#pragma once

namespace defexp {

/// Selects one of the three generalized-power families.
enum class PowerKind { backward, forward, central };

/// Generalized integer power of z with step h:
///
///   backward  z(z-h)(z-2h)...(z-(n-1)h)
///   forward   z(z+h)(z+2h)...(z+(n-1)h)
///   central   the symmetric product pairing factors z -+ kh
///
/// n = 0 gives 1 for every kind, and h = 0 degenerates to the plain power
/// z^n.  The central product is evaluated pairwise, (z-s)(z+s), so it is
/// bit-identical under h -> -h.
double gen_pow(double z, int n, double h, PowerKind kind);

/// Generalized binomial coefficient C(z/h, n) = z^(n,h) / (h^n n!).
/// Requires h != 0.
double binom_via_gen_pow(double z, int n, double h);

}  // namespace defexp
