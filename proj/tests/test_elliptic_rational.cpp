#include <doctest.h>

#include <cmath>

#include "bdyn/elliptic_rational.hpp"
#include "bdyn/errors.hpp"

using namespace bdyn;

TEST_CASE("defining relation n_tau(p_tau(z)) = p_{n tau}(n z)") {
  for (const int n : {2, 3, 4}) {
    const Tau tau(Complex(0.5, 1.0));
    const EllipticRationalParams p(n, tau);
    for (const Complex z : {Complex(0.13, 0.21), Complex(0.37, 0.6)}) {
      const Point x = weierstrass_p(z, tau);
      const Point want = weierstrass_p(static_cast<double>(n) * z, tau.scaled(n));
      const Point got = ell_rat_eval(p, x);
      CHECK(chordal_distance(got, want) < 1e-9);
    }
  }
}

TEST_CASE("fit reproduces the function and has degree n") {
  const EllipticRationalParams p(3, Tau(Complex(0, 1)));
  const auto fit = ell_rat_fit(p);
  CHECK(fit.holdout_residual < 1e-8);
  const Point x(Complex(0.7, -0.4));
  CHECK(chordal_distance(fit(x), ell_rat_eval(p, x)) < 1e-8);
}

TEST_CASE("critical values: half-period values of the big lattice") {
  for (const int n : {2, 3})
    for (const Complex tau : {Complex(0, 1), Complex(0.5, 1)}) {
      const EllipticRationalParams p(n, Tau(tau));
      const auto fit = ell_rat_fit(p);
      CHECK(point_set_distance(fit.critical_values(), ell_rat_critical_values(p).values) < 1e-6);
    }
  // n >= 3: three finite values p_{n tau}(half periods) and infinity
  const EllipticRationalParams p3(3, Tau(Complex(0, 1)));
  const auto cv = ell_rat_critical_values(p3);
  CHECK(cv.half_period_form);
  REQUIRE(cv.values.size() == 4);
  CHECK(cv.values.back().infinite);
  const auto e = weierstrass_data(Tau(Complex(0, 3))).e_values;
  std::vector<Point> want{Point(e[0]), Point(e[1]), Point(e[2]), Point::at_infinity()};
  CHECK(point_set_distance(cv.values, want) < 1e-9);
  // n = 2: only two critical values
  CHECK(ell_rat_critical_values(EllipticRationalParams(2, Tau(Complex(0, 1)))).values.size() == 2);
}

TEST_CASE("Gamma_0(n) equivalence") {
  const Tau tau(Complex(0, 1));
  for (const ModularMatrix m : {ModularMatrix{1, 1, 0, 1}, ModularMatrix{1, 0, 3, 1}, ModularMatrix{2, 1, 3, 2}}) {
    CHECK(gamma0_member(m, 3));
    const auto rep = equivalence_check(3, tau, m);
    CHECK(rep.verified);
    CHECK(rep.max_deviation < 1e-5);
  }
  CHECK_FALSE(gamma0_member(ModularMatrix{1, 0, 1, 1}, 3));
  CHECK_THROWS_AS(equivalence_check(3, tau, ModularMatrix{1, 0, 1, 1}), DomainError);
  CHECK_THROWS_AS(gamma0_member(ModularMatrix{2, 0, 0, 1}, 3), DomainError);
}

TEST_CASE("j-invariant is Moebius invariant") {
  const std::vector<Point> a{Point(Complex(0.1)), Point(Complex(2, 1)), Point(Complex(-1, 0.5)), Point(Complex(3))};
  std::vector<Point> b;
  for (const auto& p : a) b.push_back(Point(Complex(2, -1) * p.value + Complex(0.3)));
  CHECK(std::abs(j_invariant(a) - j_invariant(b)) < 1e-9 * std::abs(j_invariant(a)));
}

TEST_CASE("transitive loop winds once around e2 and e3") {
  const Tau tau(Complex(0, 1.3));
  const auto e = weierstrass_data(tau).e_values;
  for (const int m : {8, 64}) {
    const auto loop = jordan_loop(tau, m);
    CHECK(winding_number(loop, e[0]) == 0);
    CHECK(std::abs(winding_number(loop, e[1])) == 1);
    CHECK(std::abs(winding_number(loop, e[2])) == 1);
  }
  CHECK_THROWS_AS(jordan_loop(tau, 4), DomainError);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(EllipticRationalParams(1, Tau(Complex(0, 1))), DomainError);
  CHECK_THROWS_AS(ell_rat_fit(EllipticRationalParams(9, Tau(Complex(0, 1)))), DomainError);
}
