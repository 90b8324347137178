#include <cmath>
#include <random>

#include <doctest.h>

#include "core/errors.hpp"
#include "core/genpow.hpp"

using defexp::binom_via_gen_pow;
using defexp::gen_pow;
using defexp::PowerKind;

namespace {

// Independent oracle: evaluate the defining products in long double straight
// from the factor lists.
long double naive_backward(long double z, int n, long double h) {
  long double acc = 1.0L;
  for (int k = 0; k < n; ++k) acc *= z - k * h;
  return acc;
}

long double naive_forward(long double z, int n, long double h) {
  long double acc = 1.0L;
  for (int k = 0; k < n; ++k) acc *= z + k * h;
  return acc;
}

long double naive_central(long double z, int n, long double h) {
  if (n == 0) return 1.0L;
  long double acc = 1.0L;
  if (n % 2 == 0) {
    for (int k = 0; k < n / 2; ++k) acc *= (z - 2 * k * h) * (z + 2 * k * h);
  } else {
    acc = z;
    for (int k = 0; k < n / 2; ++k) {
      acc *= (z - (2 * k + 1) * h) * (z + (2 * k + 1) * h);
    }
  }
  return acc;
}

double rel_gap(double a, double b) {
  return std::fabs(a - b) / std::max(1.0, std::fabs(b));
}

}  // namespace

TEST_CASE("gen_pow matches the frozen example values") {
  CHECK(gen_pow(5.0, 0, 1.0, PowerKind::backward) == 1.0);
  CHECK(gen_pow(5.0, 3, 1.0, PowerKind::backward) == 60.0);   // 5*4*3
  CHECK(gen_pow(2.0, 3, 1.0, PowerKind::forward) == 24.0);    // 2*3*4
  CHECK(gen_pow(2.0, 3, 1.0, PowerKind::central) == 6.0);     // 2*1*3
  CHECK(gen_pow(5.0, 4, 1.0, PowerKind::central) == 525.0);   // 25*3*7
}

TEST_CASE("gen_pow n = 0 returns 1 for every kind and any arguments") {
  for (PowerKind kind :
       {PowerKind::backward, PowerKind::forward, PowerKind::central}) {
    CHECK(gen_pow(-3.7, 0, 0.25, kind) == 1.0);
    CHECK(gen_pow(0.0, 0, 0.0, kind) == 1.0);
  }
}

TEST_CASE("gen_pow agrees with the naive long double products") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> zdist(-3.0, 3.0);
  std::uniform_real_distribution<double> hdist(0.1, 1.5);
  for (int i = 0; i < 200; ++i) {
    const double z = zdist(rng);
    const double h = (i % 2 ? 1 : -1) * hdist(rng);
    const int n = static_cast<int>(rng() % 11);
    CHECK(rel_gap(gen_pow(z, n, h, PowerKind::backward),
                  static_cast<double>(naive_backward(z, n, h))) < 1e-13);
    CHECK(rel_gap(gen_pow(z, n, h, PowerKind::forward),
                  static_cast<double>(naive_forward(z, n, h))) < 1e-13);
    CHECK(rel_gap(gen_pow(z, n, h, PowerKind::central),
                  static_cast<double>(naive_central(z, n, h))) < 1e-13);
  }
}

TEST_CASE("reflection swaps backward and forward exactly") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double z = dist(rng);
    const double h = 0.1 + 0.9 * std::fabs(dist(rng)) / 2.0;
    const int n = 1 + static_cast<int>(rng() % 10);
    CHECK(gen_pow(z, n, h, PowerKind::backward) ==
          gen_pow(z, n, -h, PowerKind::forward));
    CHECK(gen_pow(z, n, h, PowerKind::forward) ==
          gen_pow(z, n, -h, PowerKind::backward));
  }
}

TEST_CASE("central power is exactly even in h") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double z = dist(rng);
    const double h = dist(rng);
    const int n = 1 + static_cast<int>(rng() % 10);
    CHECK(gen_pow(z, n, h, PowerKind::central) ==
          gen_pow(z, n, -h, PowerKind::central));
  }
}

TEST_CASE("central power reduces to a backward power with doubled step") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  int checked = 0;
  while (checked < 100) {
    const double z = dist(rng);
    const double h = 0.1 + std::fabs(dist(rng)) / 2.2;
    const int n = 1 + static_cast<int>(rng() % 10);
    bool separated = true;
    for (int k = -n; k <= n; ++k) {
      if (std::fabs(z - k * h) < 0.02) separated = false;
    }
    if (!separated) continue;
    ++checked;
    const double lhs = gen_pow(z, n, h, PowerKind::central);
    const double rhs =
        z * gen_pow(z + (n - 2) * h, n - 1, 2.0 * h, PowerKind::backward);
    CHECK(rel_gap(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("factored central forms hold") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  int checked = 0;
  while (checked < 100) {
    const double z = dist(rng);
    const double h = 0.1 + std::fabs(dist(rng)) / 2.2;
    const int m = 1 + static_cast<int>(rng() % 4);
    bool separated = true;
    for (int k = -(2 * m + 1); k <= 2 * m + 1; ++k) {
      if (std::fabs(z - k * h) < 0.02) separated = false;
    }
    if (!separated) continue;
    ++checked;

    CHECK(rel_gap(gen_pow(z, 2 * m, h, PowerKind::central),
                  gen_pow(z, m, 2 * h, PowerKind::backward) *
                      gen_pow(z, m, 2 * h, PowerKind::forward)) < 1e-12);
    CHECK(rel_gap(gen_pow(z, 2 * m + 1, h, PowerKind::central),
                  z * gen_pow(z - h, m, 2 * h, PowerKind::backward) *
                      gen_pow(z + h, m, 2 * h, PowerKind::forward)) < 1e-12);
    CHECK(rel_gap(gen_pow(z, 2 * m, h, PowerKind::central) *
                      gen_pow(z, 2 * m + 1, h, PowerKind::central),
                  z * gen_pow(z, 2 * m, h, PowerKind::backward) *
                      gen_pow(z, 2 * m, h, PowerKind::forward)) < 1e-12);
  }
}

TEST_CASE("h = 0 degenerates to the plain power") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double z = dist(rng);
    const int n = static_cast<int>(rng() % 8);
    double zn = 1.0;
    for (int k = 0; k < n; ++k) zn *= z;
    for (PowerKind kind :
         {PowerKind::backward, PowerKind::forward, PowerKind::central}) {
      CHECK(gen_pow(z, n, 0.0, kind) == zn);
    }
  }
}

TEST_CASE("gen_pow rejects bad arguments") {
  CHECK_THROWS_AS(gen_pow(1.0, -1, 1.0, PowerKind::backward),
                  defexp::InvalidArgument);
  CHECK_THROWS_AS(gen_pow(std::nan(""), 2, 1.0, PowerKind::backward),
                  defexp::InvalidArgument);
}

TEST_CASE("binom_via_gen_pow values") {
  CHECK(binom_via_gen_pow(6.0, 2, 2.0) == 3.0);   // C(3,2)
  CHECK(binom_via_gen_pow(5.0, 2, 1.0) == 10.0);  // C(5,2)
  CHECK(binom_via_gen_pow(-1.3, 0, 0.7) == 1.0);
}

TEST_CASE("binom_via_gen_pow equals the factor-by-factor binomial") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double z = dist(rng);
    const double h = 0.2 + std::fabs(dist(rng)) / 2.0;
    const int n = static_cast<int>(rng() % 9);
    const double r = z / h;
    double expected = 1.0;
    for (int k = 0; k < n; ++k) expected *= (r - k) / (k + 1);
    CHECK(rel_gap(binom_via_gen_pow(z, n, h), expected) < 1e-12);
  }
}

TEST_CASE("binom_via_gen_pow rejects h = 0") {
  CHECK_THROWS_AS(binom_via_gen_pow(2.0, 3, 0.0), defexp::InvalidArgument);
}
