#pragma once

#include "defarith.hpp"

namespace defexp {

/// e_h(x,y) = (1+hx)^(y/h), evaluated as exp(y {x}_h).  Requires 1+hx > 0;
/// h = 0 returns exp(x y).
double e_sub(double x, double y, double h);

/// exp_h(x,y) = (hx + sqrt(1+h^2 x^2))^(y/h), evaluated as exp(y {x}^h).
/// Defined and strictly positive for all real x; h = 0 returns exp(x y).
double e_sup(double x, double y, double h);

/// Tsallis q-exponential: (1+(1-q)x)^(1/(1-q)) where 1+(1-q)x > 0, else 0.
/// q = 1 returns exp(x).
double tsallis_q_exp(double x, double q);

/// Kaniadakis kappa-exponential (kappa x + sqrt(1+kappa^2 x^2))^(1/kappa),
/// i.e. e_sup(x, 1, kappa).  kappa = 0 returns exp(x).
double kaniadakis_exp(double x, double kappa);

/// Quantum-group exponential p^(y/(p-1)) = e_sub(1, y, p-1).  Requires
/// p > 0; p = 1 returns exp(y) through the classical branch.
double quantum_group_exp(double y, double p);

/// Argument shift under which e_sub reproduces e_sup:
/// e_sup(x,y,h) = e_sub(sub_to_sup_shift(x,h), y, h).  Requires h != 0.
double sub_to_sup_shift(double x, double h);

}  // namespace defexp
