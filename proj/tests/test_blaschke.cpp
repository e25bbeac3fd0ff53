#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bdyn/blaschke.hpp"
#include "bdyn/errors.hpp"
#include "bdyn/permutation.hpp"
#include "bdyn/polynomial.hpp"

using namespace bdyn;

namespace {

FBP random_fbp(std::mt19937_64& rng, int degree, double radius = 0.85) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Complex> z;
  for (int i = 0; i < degree; ++i) z.push_back(std::polar(radius * std::sqrt(u(rng)), 2 * std::numbers::pi * u(rng)));
  return make_fbp(std::polar(1.0, 2 * std::numbers::pi * u(rng)), z);
}

// direct product formula, independent of the class
Complex direct(Complex rho, const std::vector<Complex>& zeros, Complex z) {
  Complex v = rho;
  for (const Complex a : zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
  return v;
}

}  // namespace

TEST_CASE("constructor validates rho and zeros") {
  CHECK_THROWS_AS(make_fbp(Complex(1.1), {Complex(0.2)}), DomainError);
  CHECK_THROWS_AS(make_fbp(Complex(1), {Complex(1.0)}), DomainError);
  CHECK_THROWS_AS(make_fbp(Complex(1), {Complex(0.3, 0.99)}), DomainError);
  CHECK_NOTHROW(make_fbp(Complex(0, 1), {Complex(0.3, 0.9)}));
}

TEST_CASE("evaluation and derivative") {
  std::mt19937_64 rng(7);
  const FBP f = random_fbp(rng, 5);
  const Complex z(0.3, -0.2);
  CHECK(std::abs(f(z) - direct(f.rho(), f.zero_list(), z)) < 1e-14);
  const double h = 1e-6;
  const Complex fd = (f(z + h) - f(z - h)) / (2 * h);
  CHECK(std::abs(f.derivative(z) - fd) < 1e-8);
  // numerator / denominator form
  CHECK(std::abs(poly_eval(f.numerator(), z) / poly_eval(f.denominator(), z) - f(z)) < 1e-13);
}

TEST_CASE("boundary and reflection invariants") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const FBP f = random_fbp(rng, 1 + trial % 8);
    CHECK(boundary_modulus_deviation(f, 1000) < 1e-12);
    CHECK(reflection_deviation(f) < 1e-10);
  }
}

TEST_CASE("composition: degrees multiply, values compose, associativity") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const FBP f = random_fbp(rng, 1 + trial % 3), g = random_fbp(rng, 1 + trial % 4), h = random_fbp(rng, 2);
    const FBP fg = compose(f, g);
    CHECK(fg.degree() == f.degree() * g.degree());
    for (const Complex z : {Complex(0.1, 0.2), Complex(-0.6, 0.3), Complex(0.0, -0.9)})
      CHECK(std::abs(fg(z) - f(g(z))) < 1e-10);
    CHECK(fbp_distance(compose(fg, h), compose(f, compose(g, h))) < 1e-8);
  }
}

TEST_CASE("compose(iota_a, z^2) has zeros at the square roots of -a") {
  const Complex a(0.3, 0.2);
  const FBP f = compose(DiskAutomorphism::iota(a), power_map(2));
  const Complex r = std::sqrt(-a);
  CHECK(matched_distance(f.zero_list(), {r, -r}) < 1e-12);
  for (const Complex z : f.zero_list()) CHECK(std::abs(z) == doctest::Approx(std::sqrt(std::abs(a))));
}

TEST_CASE("disk automorphisms form a group") {
  const DiskAutomorphism a(std::polar(1.0, 0.7), Complex(0.2, -0.4));
  const DiskAutomorphism b(std::polar(1.0, -1.3), Complex(-0.5, 0.1));
  const Complex z(0.33, 0.12);
  CHECK(std::abs((a * b)(z) - a(b(z))) < 1e-14);
  CHECK(std::abs(a.inverse()(a(z)) - z) < 1e-14);
  const auto m = DiskAutomorphism::from_matrix(a.matrix());
  CHECK(std::abs(m(z) - a(z)) < 1e-14);
  CHECK(std::abs(a.to_fbp()(z) - a(z)) < 1e-14);
}

TEST_CASE("pseudo-hyperbolic distance is automorphism invariant") {
  const DiskAutomorphism a(std::polar(1.0, 0.4), Complex(0.3, 0.5));
  const Complex z(0.1, 0.6), w(-0.4, -0.2);
  CHECK(pseudo_distance(a(z), a(w)) == doctest::Approx(pseudo_distance(z, w)).epsilon(1e-13));
}

TEST_CASE("critical points: Riemann-Hurwitz count in the disk") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 7; ++n) {
    const FBP f = random_fbp(rng, n, 0.7);
    const auto cd = critical_data(f);
    CHECK(cd.total_multiplicity() == n - 1);
    for (const auto& c : cd.critical_points) CHECK(std::abs(f.derivative(c.point)) < 1e-8);
  }
}

TEST_CASE("totally ramified normal form") {
  const Complex p(0.3, -0.1);
  const FBP f = compose(compose(DiskAutomorphism(std::polar(1.0, 0.5), Complex(0.1, 0.2)), power_map(3)),
                        DiskAutomorphism::iota(-p));
  CHECK(is_totally_ramified(f));
  const auto form = totally_ramified_normal_form(f);
  REQUIRE(form.has_value());
  CHECK(form->s == 3);
  CHECK(std::abs(form->p - p) < 1e-7);
  CHECK(fbp_distance(from_normal_form(*form), f) < 1e-8);
  // self-conjugate case: critical point equals its value
  const FBP g = compose(compose(DiskAutomorphism::iota(p), power_map(2, Complex(0, 1))), DiskAutomorphism::iota(-p));
  const auto gform = totally_ramified_normal_form(g);
  REQUIRE(gform.has_value());
  CHECK(gform->self_conjugate);
  std::mt19937_64 rng(9);
  CHECK_FALSE(is_totally_ramified(random_fbp(rng, 3)));
}

TEST_CASE("association: witnesses exist exactly for conjugates") {
  std::mt19937_64 rng(21);
  const FBP g = random_fbp(rng, 3, 0.6);
  const DiskAutomorphism eps(std::polar(1.0, 1.1), Complex(0.2, 0.1)), eph(std::polar(1.0, -0.3), Complex(-0.1, 0.3));
  const FBP f = compose(eph, compose(g, eps));
  const auto w = associated(f, g);
  REQUIRE_FALSE(w.empty());
  CHECK(fbp_distance(compose(w[0].eph, compose(g, w[0].eps)), f) < 1e-8);
  CHECK(associated(random_fbp(rng, 3, 0.6), g).empty());
  CHECK(associated(power_map(2), g).empty());
}

TEST_CASE("iterate respects the degree cap") {
  CHECK(iterate(power_map(2), 5).degree() == 32);
  CHECK_THROWS(iterate(power_map(4), 7, 4096));
}

TEST_CASE("permutations") {
  const auto a = Permutation::from_cycles(4, {{1, 2}});
  const auto b = Permutation::from_cycles(4, {{1, 2, 3, 4}});
  CHECK((a * b)(0) == a(b(0)));
  CHECK(b.to_cycle_string() == "(1 2 3 4)");
  CHECK(Permutation::identity(3).to_cycle_string() == "()");
  CHECK(b.cycle_type() == std::vector<int>{4});
  CHECK(a.cycle_type() == std::vector<int>{2, 1, 1});
  CHECK(group_order({a, b}) == 24);
  CHECK(group_order({b}) == 4);
  CHECK(is_transitive({b}));
  CHECK_FALSE(is_transitive({a}));
  CHECK((b * b.inverse()).is_identity());
}
