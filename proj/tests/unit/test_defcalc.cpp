#include <cmath>
#include <random>

#include <doctest.h>

#include "core/defarith.hpp"
#include "core/defcalc.hpp"
#include "core/defexp.hpp"
#include "core/errors.hpp"

using namespace defexp;

namespace {

double rel_gap(double a, double b) {
  return std::fabs(a - b) / std::max(1.0, std::fabs(b));
}

}  // namespace

TEST_CASE("deformed_derivative frozen examples") {
  const auto c = [](double) { return 3.25; };
  CHECK(deformed_derivative(c, 0.7, 0.4, DerivKind::sub, 1e-6) == 0.0);
  CHECK(deformed_derivative(c, 0.7, 0.4, DerivKind::sup, 1e-6) == 0.0);

  const auto ident = [](double z) { return z; };
  CHECK(deformed_derivative(ident, 1.0, 1.0, DerivKind::sub, 1e-6) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(deformed_derivative(ident, 0.75, 1.0, DerivKind::sup, 1e-6) ==
        doctest::Approx(1.25).epsilon(1e-9));
}

TEST_CASE("deformed_derivative validates fd_step") {
  const auto ident = [](double z) { return z; };
  CHECK_THROWS_AS(deformed_derivative(ident, 0.0, 0.5, DerivKind::sub, 0.0),
                  InvalidArgument);
  CHECK_THROWS_AS(deformed_derivative(ident, 0.0, 0.5, DerivKind::sub, -1e-6),
                  InvalidArgument);
}

TEST_CASE("default_fd_step scales with |z|") {
  const double eps_cbrt = std::cbrt(std::numeric_limits<double>::epsilon());
  CHECK(default_fd_step(0.0) == eps_cbrt);
  CHECK(default_fd_step(0.5) == eps_cbrt);
  CHECK(default_fd_step(-8.0) == 8.0 * eps_cbrt);
}

TEST_CASE("deformed_derivative_analytic values and pairing") {
  CHECK(deformed_derivative_analytic(DerivKind::sub, Family::sub, 0.9, 0.0,
                                     0.5) == 0.0);
  CHECK(deformed_derivative_analytic(DerivKind::sub, Family::sub, 1.0, 3.0,
                                     1.0) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(deformed_derivative_analytic(DerivKind::sup, Family::sup, 0.75, 1.0,
                                     1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(deformed_derivative_analytic(DerivKind::sub, Family::sup,
                                               0.5, 1.0, 0.5),
                  InvalidArgument);
  CHECK_THROWS_AS(deformed_derivative_analytic(DerivKind::sup, Family::sub,
                                               0.5, 1.0, 0.5),
                  InvalidArgument);
}

TEST_CASE("partial_y_factor") {
  CHECK(partial_y_factor(0.0, 0.8, Family::sub) == 0.0);
  CHECK(partial_y_factor(0.0, 0.8, Family::sup) == 0.0);
  CHECK(partial_y_factor(std::exp(1.0) - 1.0, 1.0, Family::sub) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(partial_y_factor(std::sinh(1.0), 1.0, Family::sup) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(partial_y_factor(-4.0, 1.0, Family::sub), DomainViolation);
}

TEST_CASE("eigenfunction relations hold under finite differences") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const double hs[] = {-1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0};
  for (double h : hs) {
    int checked = 0;
    while (checked < 40) {
      const double x = dist(rng);
      if (1 + h * x < 0.1) continue;
      ++checked;
      const double y = dist(rng);

      const auto f_sub = [&](double t) { return e_sub(t, y, h); };
      CHECK(rel_gap(deformed_derivative(f_sub, x, h, DerivKind::sub, 1e-6),
                    deformed_derivative_analytic(DerivKind::sub, Family::sub,
                                                 x, y, h)) < 1e-6);
      const auto f_sup = [&](double t) { return e_sup(t, y, h); };
      CHECK(rel_gap(deformed_derivative(f_sup, x, h, DerivKind::sup, 1e-6),
                    deformed_derivative_analytic(DerivKind::sup, Family::sup,
                                                 x, y, h)) < 1e-6);
    }
  }
}

TEST_CASE("d/dy eigen-relations hold under finite differences") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const double hs[] = {-1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0};
  const double s = 1e-6;
  for (double h : hs) {
    int checked = 0;
    while (checked < 40) {
      const double x = dist(rng);
      if (1 + h * x < 0.1) continue;
      ++checked;
      const double y = dist(rng);

      const double fd_sub = (e_sub(x, y + s, h) - e_sub(x, y - s, h)) / (2 * s);
      CHECK(rel_gap(fd_sub, partial_y_factor(x, h, Family::sub) * e_sub(x, y, h)) <
            1e-6);
      const double fd_sup = (e_sup(x, y + s, h) - e_sup(x, y - s, h)) / (2 * s);
      CHECK(rel_gap(fd_sup, partial_y_factor(x, h, Family::sup) * e_sup(x, y, h)) <
            1e-6);
    }
  }
}

TEST_CASE("step halving shrinks the error by a second-order factor") {
  const double x = 0.4, y = 1.3, h = 0.5;
  const double exact =
      deformed_derivative_analytic(DerivKind::sub, Family::sub, x, y, h);
  const auto f = [&](double t) { return e_sub(t, y, h); };

  double err[4];
  double s = 1e-2;
  for (int k = 0; k < 4; ++k, s *= 0.5) {
    err[k] = std::fabs(deformed_derivative(f, x, h, DerivKind::sub, s) - exact);
  }
  for (int k = 0; k < 3; ++k) {
    CHECK(err[k + 1] > 0.0);
    const double ratio = err[k] / err[k + 1];
    CHECK(ratio >= 2.0);
    CHECK(ratio <= 8.0);
  }
}

TEST_CASE("h = 0 reduces both deformed derivatives to the plain derivative") {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double a = dist(rng);
    const double b = dist(rng);
    const double z = dist(rng);
    const auto f = [&](double t) { return a * t * t + b * t; };
    for (DerivKind kind : {DerivKind::sub, DerivKind::sup}) {
      CHECK(rel_gap(deformed_derivative(f, z, 0.0, kind, default_fd_step(z)),
                    2.0 * a * z + b) < 1e-9);
    }
  }
}
