#pragma once

#include <string>

namespace defexp {

/// The two deformation families: `sub` is the {x}_h / oplus_sub world built
/// on ln(1+hx), `sup` is the {x}^h / oplus_sup world built on arcsinh(hx).
enum class Family { sub, sup };

/// Open interval on which a deformed-sum group lives.
struct DomainInterval {
  double lower;  // -infinity allowed
  double upper;  // +infinity allowed

  bool contains(double x) const;  // strict: lower < x < upper
  std::string to_string() const;
};

/// Deformation map {x}_h = ln(1+hx)/h.  h = 0 returns x (the limit).
double brace_sub(double x, double h);

/// Deformation map {x}^h = arcsinh(hx)/h.  h = 0 returns x.
double brace_sup(double x, double h);

/// x1 (+)_h x2 = x1 + x2 + h x1 x2.
double oplus_sub(double x1, double x2, double h);

/// x1 (-)_h x2 = (x1 - x2) / (1 + h x2).  x2 = -1/h is a pole.
double ominus_sub(double x1, double x2, double h);

/// (-)_h x = -x / (1 + h x), the group inverse of x under oplus_sub.
double neg_sub(double x, double h);

/// x1 (+)^h x2 = x1 sqrt(1 + h^2 x2^2) + x2 sqrt(1 + h^2 x1^2).
double oplus_sup(double x1, double x2, double h);

/// x1 (-)^h x2 = x1 (+)^h (-x2).
double ominus_sup(double x1, double x2, double h);

/// Validity interval of the requested group: for the sub family
/// (-1/h, +inf) when h > 0, (-inf, -1/h) when h < 0, and the whole real
/// line when h = 0; the sup family always lives on the whole real line.
DomainInterval group_domain(double h, Family family);

}  // namespace defexp
