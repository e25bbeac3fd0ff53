#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bdyn/elliptic.hpp"

using namespace bdyn;
using C = std::complex<double>;

namespace {

// Brute lattice sum with 1/z^2 + sum' (1/(z-w)^2 - 1/w^2), truncated square.
C lattice_p(C z, C tau, int r) {
  C s = 1.0 / (z * z);
  for (int m = -r; m <= r; ++m)
    for (int n = -r; n <= r; ++n) {
      if (m == 0 && n == 0) continue;
      const C w = double(m) + double(n) * tau;
      s += 1.0 / ((z - w) * (z - w)) - 1.0 / (w * w);
    }
  return s;
}

// gamma(t) from its own theta series: sqrt(k) = theta2 / theta3 at q = exp(-4t)
double gamma_series(double t) {
  const double q = std::exp(-4.0 * t);
  double th2 = 0, th3 = 1;
  for (int n = 0; n < 60; ++n) th2 += 2 * std::pow(q, (n + 0.5) * (n + 0.5));
  for (int n = 1; n < 60; ++n) th3 += 2 * std::pow(q, double(n) * n);
  return th2 / th3;
}

double agm_K(double k) {
  double a = 1, b = std::sqrt(1 - k * k);
  for (int i = 0; i < 40; ++i) {
    const double an = (a + b) / 2;
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (2 * a);
}

}  // namespace

TEST_CASE("lemniscatic modulus at tau = i") {
  const auto md = modulus_data(ModularTau<double>(C(0, 1)));
  CHECK(md.modulus_k.real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(md.quarter_K - md.quarter_Kp) < 1e-14);
}

TEST_CASE("tau outside the upper half plane is rejected") {
  CHECK_THROWS_AS(ModularTau<double>(C(0.3, 0)), DomainError);
  CHECK_THROWS_AS(ModularTau<double>(C(0.3, -1)), DomainError);
  CHECK_THROWS_AS(gamma_of_t(-0.5), DomainError);
}

TEST_CASE("gamma(t) agrees with an independent theta series") {
  for (const double t : {0.05, 0.2, 0.5, 1.0, 2.0}) CHECK(std::abs(gamma_of_t(t) - gamma_series(t)) < 1e-14);
  // complement stays accurate where gamma rounds to one
  CHECK(gamma_of_t(0.01) == 1.0);
  CHECK(gamma_complement(0.01) > 0);
  CHECK(gamma_complement(0.5) == doctest::Approx(1 - gamma_of_t(0.5)).epsilon(1e-12));
}

TEST_CASE("quarter period matches the AGM formula") {
  for (const double t : {0.2, 0.7, 1.5}) {
    const auto m = real_modulus(modulus_data(ModularTau<double>(C(0, 4 * t / std::numbers::pi))));
    CHECK(m.K == doctest::Approx(agm_K(m.k)).epsilon(1e-13));
    // K'/K = Im tau
    CHECK(m.Kp / m.K == doctest::Approx(4 * t / std::numbers::pi).epsilon(1e-12));
  }
}

TEST_CASE("Jacobi identities at complex arguments") {
  const auto m = RealModulus<double>::from_k(0.6);
  for (const C u : {C(0.3, 0.1), C(1.1, -0.4), C(2.5, 0.9), C(-0.7, 1.3)}) {
    const auto j = jacobi_functions(u, m);
    CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-12);
    CHECK(std::abs(j.dn * j.dn + 0.36 * j.sn * j.sn - 1.0) < 1e-12);
    CHECK(std::abs(j.cd.value - j.cn / j.dn) < 1e-12);
  }
  const auto at_K = jacobi_functions(C(m.K, 0), m);
  CHECK(std::abs(at_K.sn - 1.0) < 1e-14);
  CHECK(std::abs(cd(C(0), m).value - 1.0) < 1e-15);
}

TEST_CASE("complex modulus route agrees with the real route") {
  const auto m = RealModulus<double>::from_k(0.45);
  const C u(0.8, 0.35);
  const auto a = jacobi_functions(u, m);
  const auto b = jacobi_functions(u, C(0.45, 0));
  CHECK(std::abs(a.sn - b.sn) < 1e-10);
  CHECK(std::abs(a.dn - b.dn) < 1e-10);
}

TEST_CASE("inverse_cd round trip") {
  const auto m = RealModulus<double>::from_k(0.8);
  for (const C x : {C(0.2, 0.1), C(-0.5, 0.3), C(0.9, -0.6), C(2.0, 0.5)}) {
    const C u = inverse_cd(Extended<double>(x), m);
    CHECK(std::abs(cd(u, m).value - x) < 1e-11);
  }
}

TEST_CASE("Weierstrass p against a brute lattice sum") {
  for (const C tau : {C(0, 1), C(0.5, 1), C(0.2, 1.7)}) {
    const ModularTau<double> t(tau);
    for (const C z : {C(0.21, 0.13), C(0.4, 0.3) * tau + 0.1}) {
      const C want = lattice_p(z, tau, 400);
      CHECK(std::abs(weierstrass_p(z, t).value - want) < 1e-4 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("p satisfies its differential equation and half-period data") {
  const ModularTau<double> tau(C(0.3, 1.1));
  const auto wd = weierstrass_data(tau);
  CHECK(std::abs(wd.e_values[0] + wd.e_values[1] + wd.e_values[2]) < 1e-10);
  for (const C z : {C(0.17, 0.2), C(0.6, 0.45)}) {
    const auto [p, dp] = weierstrass_p_with_derivative(z, tau);
    const C rhs = 4.0 * p.value * p.value * p.value - wd.g2 * p.value - wd.g3;
    CHECK(std::abs(dp * dp - rhs) < 1e-9 * std::abs(rhs));
  }
  // periodicity and evenness
  const C z(0.23, 0.31);
  CHECK(std::abs(weierstrass_p(z + 1.0, tau).value - weierstrass_p(z, tau).value) < 1e-11);
  CHECK(std::abs(weierstrass_p(z + tau.value(), tau).value - weierstrass_p(z, tau).value) < 1e-10);
  CHECK(std::abs(weierstrass_p(-z, tau).value - weierstrass_p(z, tau).value) < 1e-11);
  CHECK(weierstrass_p(C(1.0, 0), tau).infinite);
}

TEST_CASE("inverse_p round trip") {
  const ModularTau<double> tau(C(0.5, 1));
  for (const C x : {C(1.5, 0.2), C(-3, 1), C(0.1, -0.2)}) {
    const C z = inverse_p(Extended<double>(x), tau);
    CHECK(std::abs(weierstrass_p(z, tau).value - x) < 1e-9 * std::max(1.0, std::abs(x)));
  }
}
