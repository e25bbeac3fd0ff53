#include <doctest.h>

#include <cmath>
#include <random>

#include "bdyn/dynamics.hpp"
#include "bdyn/errors.hpp"

using namespace bdyn;

namespace {

GaussianRational q(const char* s) { return GaussianRational::parse(s); }

ExactMap power(int n) { return ExactMap(exact_power_map(n)); }

GaussianRational random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 40);
  return GaussianRational(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
}

}  // namespace

TEST_CASE("Gaussian gcd and division") {
  const GaussianInteger a{mpz_class(11), mpz_class(3)}, b{mpz_class(1), mpz_class(8)};
  const GaussianInteger r = remainder(a, b);
  CHECK(r.norm() * 2 <= b.norm());
  CHECK(div_round(a, b) * b + r == a);
  // gcd of (2+i)(3-2i) and (2+i)(1+i) is an associate of 2+i
  const GaussianInteger p{mpz_class(2), mpz_class(1)};
  const GaussianInteger g = gcd(p * GaussianInteger{mpz_class(3), mpz_class(-2)}, p * GaussianInteger{mpz_class(1), mpz_class(1)});
  CHECK(g.norm() == 5);
  CHECK(g.re > 0);
  CHECK(g.im >= 0);
  CHECK(div_exact(p * b, b) == p);
}

TEST_CASE("lowest terms and canonical denominators") {
  const auto x = q("1/2+1/2*i");
  CHECK(x.den().norm() == 2);  // (1+i)/2 = 1/(1-i) up to units
  CHECK(x.den().re > 0);
  CHECK(x.den().im >= 0);
  CHECK(x == GaussianRational(GaussianInteger(1), GaussianInteger{mpz_class(1), mpz_class(-1)}));
  CHECK(q("6/4") == q("3/2"));
  CHECK(q("-i") == GaussianRational(GaussianInteger{mpz_class(0), mpz_class(-1)}, GaussianInteger(1)));
  CHECK(q("i/2") == q("1/2*i"));
  CHECK(q("1/2 + 3/4 i") == q("1/2+3/4*i"));
  CHECK(q("inf").is_infinite());
  for (const char* s : {"3/5", "-7/3+2/9*i", "5/8*i", "0", "inf"}) CHECK(q(s).to_string() == s);
}

TEST_CASE("malformed points are input errors") {
  for (const char* s : {"", "1/0", "1/2+x", "2*3", "i*i", "1/2+1/3"}) CHECK_THROWS_AS(q(s), InputError);
}

TEST_CASE("field arithmetic") {
  const auto a = q("1/3+1/2*i"), b = q("-2/5+1/7*i");
  CHECK((a + b) - b == a);
  CHECK((a * b) / b == a);
  CHECK(a.conj().conj() == a);
  CHECK((a * a.conj()).imag() == 0);
  CHECK((a * a.conj()).real() == a.abs2());
  CHECK_THROWS_AS(a / q("0"), DomainError);
}

TEST_CASE("naive heights") {
  CHECK(naive_height(q("3/5")) == doctest::Approx(std::log(5.0)).epsilon(1e-15));
  CHECK(naive_height(q("i/2")) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(naive_height(q("1/2+1/2*i")) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(naive_height(q("0")) == 0);
  CHECK(naive_height(q("inf")) == 0);
}

TEST_CASE("resultant of split forms is the product of root differences") {
  // F = (X - 1Y)(X - 2Y), G = (X - 5Y)(X + 3Y); monic in X
  const HomogeneousForm f{GaussianInteger(2), GaussianInteger(-3), GaussianInteger(1)};
  const HomogeneousForm g{GaussianInteger(-15), GaussianInteger(-2), GaussianInteger(1)};
  // prod (a_i - b_j) over a in {1, 2}, b in {5, -3}
  CHECK(resultant(f, g) == GaussianInteger((1 - 5) * (1 + 3) * (2 - 5) * (2 + 3)));
  CHECK(power(2).resultant().is_unit());
  CHECK_THROWS_AS(ExactMap(f, f), DomainError);
}

TEST_CASE("exact maps agree with the floating-point product") {
  const ExactBlaschke b(q("3/5+4/5*i"), {q("1/2"), q("-1/3+1/4*i"), q("1/5*i")});
  const ExactMap f(b);
  const FBP g = b.to_fbp();
  for (const char* s : {"1/7", "2/3-1/3*i", "-1/2*i"}) {
    const auto x = q(s);
    CHECK(std::abs(f(x).to_complex() - g(x.to_complex())) < 1e-14);
  }
  CHECK_THROWS_AS(ExactBlaschke(q("1/2"), {q("0")}), DomainError);
  CHECK_THROWS_AS(ExactBlaschke(q("1"), {q("1")}), DomainError);
}

TEST_CASE("orbits") {
  const auto o = orbit(power(2), q("1/2"), 3);
  CHECK(o.points == std::vector<GaussianRational>{q("1/2"), q("1/4"), q("1/16"), q("1/256")});
  CHECK_FALSE(o.preperiodic());
  const auto b = orbit(power(2), q("i"), 4);
  CHECK(b.points == std::vector<GaussianRational>{q("i"), q("-1"), q("1"), q("1"), q("1")});
  CHECK(b.cycle_start == 2);
  CHECK(b.cycle_length == 1);
  // conjugate of z^2 by iota_{1/2}: the orbit of 0 stays in the disk
  const ExactMap conj = compose(compose(ExactMap(ExactBlaschke(1, {q("-1/2")})), power(2)), ExactMap(ExactBlaschke(1, {q("1/2")})));
  const auto c = orbit(conj, q("0"), 6);
  CHECK(c.points[1] == q("2/3"));
  for (const auto& p : c.points) CHECK(p.abs2() < 1);
  CHECK_THROWS_AS(orbit(power(2), q("1/3"), 30, 1 << 12), GrowthCapExceeded);
  try {
    orbit(power(2), q("1/3"), 30, 1 << 12);
  } catch (const GrowthCapExceeded& e) {
    CHECK(e.index() == 12);  // 3^(2^12) needs 6492 bits
  }
}

TEST_CASE("canonical height") {
  const auto h = canonical_height_estimate(power(2), q("1/2"), 6);
  CHECK(std::abs(h.canonical_estimate - std::log(2.0)) < 1e-12);
  for (const double v : h.trace) CHECK(std::abs(v - std::log(2.0)) < 1e-12);
  CHECK(std::abs(canonical_height_estimate(power(2), q("2"), 8).canonical_estimate - std::log(2.0)) < 1e-12);
  const auto z = canonical_height_estimate(power(2), q("0"), 5);
  CHECK(z.preperiodic);
  CHECK(z.canonical_estimate == 0);
  // functoriality: h^(f(x)) estimated with N-1 steps is d times h^(x) with N
  const auto x = q("2/3+1/5*i");
  const auto a = canonical_height_estimate(power(3), power(3)(x), 4).canonical_estimate;
  const auto b = canonical_height_estimate(power(3), x, 5).canonical_estimate;
  CHECK(a == doctest::Approx(3 * b).epsilon(1e-12));
}

TEST_CASE("height transformation defect stays bounded") {
  const ExactMap f(ExactBlaschke(q("1"), {q("1/2"), q("-1/3*i")}));
  std::mt19937_64 rng(4);
  double defect_small = 0, defect_all = 0;
  for (int k = 0; k < 100; ++k) {
    const auto x = random_point(rng);
    const double d = std::abs(naive_height(f(x)) - 2 * naive_height(x));
    (k < 50 ? defect_small : defect_all) = std::max(k < 50 ? defect_small : defect_all, d);
  }
  defect_all = std::max(defect_all, defect_small);
  // the constant depends on f only: log of the coefficient sizes
  CHECK(defect_all < 2 * std::log(36.0));
  CHECK(defect_all < defect_small + 2.0);
}

TEST_CASE("orbit intersection") {
  const auto r = orbit_intersection(power(2), q("1/2"), power(3), q("1/2"), 20);
  REQUIRE(r.hits.size() == 1);
  CHECK(r.hits[0].i == 0);
  CHECK(r.hits[0].j == 0);
  CHECK(r.hits[0].confirmed);
  const auto c = orbit_intersection(power(2), q("1/2"), power(4), q("1/2"), 12);
  REQUIRE(c.hits.size() == 7);
  for (std::size_t j = 0; j < c.hits.size(); ++j) {
    CHECK(c.hits[j].i == 2 * static_cast<int>(j));
    CHECK(c.hits[j].j == static_cast<int>(j));
  }
  // symmetry
  const auto s = orbit_intersection(power(4), q("1/2"), power(2), q("1/2"), 12);
  REQUIRE(s.hits.size() == c.hits.size());
  for (std::size_t k = 0; k < s.hits.size(); ++k) {
    CHECK(s.hits[k].i == c.hits[k].j);
    CHECK(s.hits[k].j == c.hits[k].i);
  }
  CHECK(orbit_intersection(power(2), q("0"), power(3), q("1/2"), 10).hits.empty());
}

TEST_CASE("modular fingerprints") {
  const auto primes = fingerprint_primes(3);
  REQUIRE(primes.size() == 3);
  for (const auto p : primes) {
    CHECK(p % 4 == 1);
    CHECK(p < (1ULL << 61));
    const ModularField f(p);
    CHECK(f.mul(f.sqrt_minus_one(), f.sqrt_minus_one()) == p - 1);
  }
  CHECK(is_prime_u64(2305843009213693951ULL));  // 2^61 - 1
  CHECK_FALSE(is_prime_u64(2305843009213693953ULL));
  // reduction commutes with evaluation
  const ModularField field(primes[0]);
  const ExactMap f(ExactBlaschke(q("3/5-4/5*i"), {q("1/2"), q("1/3*i")}));
  const ModularMap fm(f, field);
  const auto x = q("2/7+1/9*i");
  CHECK(fm(reduce_point(field, x)) == reduce_point(field, f(x)));
}

TEST_CASE("degree growth experiment") {
  const auto rep = degree_growth_experiment(power(2), power(3), q("1/2"), 10);
  CHECK(rep.rows.size() == 11);
  CHECK(rep.rows[10].h_f == doctest::Approx(1024 * std::log(2.0)));
  CHECK(rep.rows[10].h_g == doctest::Approx(59049 * std::log(2.0)));
  CHECK(rep.rate_f == doctest::Approx(2.0));
  CHECK(rep.rate_g == doctest::Approx(3.0));
  CHECK(rep.final_ratio >= std::pow(1.5, 5));
  CHECK(rep.separated);
  CHECK_THROWS_AS(degree_growth_experiment(power(2), power(2), q("1/2"), 5), DomainError);
  CHECK_THROWS_AS(degree_growth_experiment(power(2), power(3), q("i"), 5), DomainError);
}
