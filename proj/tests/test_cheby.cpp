#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bdyn/cheby.hpp"
#include "bdyn/elliptic.hpp"
#include "bdyn/errors.hpp"

using namespace bdyn;

TEST_CASE("T_{n,t} has n real zeros in (-gamma(t), gamma(t)), symmetric about 0") {
  for (int n = 1; n <= 7; ++n) {
    const auto f = cheby_blaschke(n, 0.4);
    const double g = gamma_of_t(0.4);
    auto zeros = f.product.zero_list();
    CHECK(static_cast<int>(zeros.size()) == n);
    for (const Complex a : zeros) {
      CHECK(a.imag() == 0.0);
      CHECK(std::abs(a.real()) < g);
    }
    std::vector<double> re;
    for (const Complex a : zeros) re.push_back(a.real());
    std::sort(re.begin(), re.end());
    for (int j = 0; j < n; ++j) CHECK(std::abs(re[j] + re[n - 1 - j]) < 1e-14);
  }
}

TEST_CASE("normalization T_{n,t}(gamma(t)) = gamma(nt)") {
  for (int n = 2; n <= 6; ++n)
    for (const double t : {0.2, 0.5, 1.0}) {
      const auto f = cheby_blaschke(n, t);
      CHECK(std::abs(f.product(gamma_of_t(t)) - gamma_of_t(n * t)) < 1e-9);
      CHECK(f.construction_deviation < 1e-10);
    }
}

TEST_CASE("equioscillation and interval invariance") {
  for (int n = 2; n <= 6; ++n) {
    const auto f = cheby_blaschke(n, 0.5);
    CHECK(equioscillation_count(f) == n + 1);
    CHECK(interval_containment_excess(f) < 1e-12);
  }
}

TEST_CASE("large t approaches the scaled Chebyshev polynomial") {
  // the nome exp(-4t) vanishes, cd -> cos, and T_{n,t}(gamma x) / gamma(nt) -> T_n(x)
  const int n = 4;
  const double t = 3.0;
  const auto f = cheby_blaschke(n, t);
  const double g = gamma_of_t(t), gn = gamma_of_t(n * t);
  for (const double x : {-0.9, -0.3, 0.1, 0.7}) {
    const double got = f.product(g * x).real() / gn;
    CHECK(got == doctest::Approx(chebyshev_poly(n, x)).epsilon(2e-2));
  }
}

TEST_CASE("rescaling identity against the transcendental form") {
  for (const int n : {3, 4})
    for (const double t : {0.3, 0.7}) {
      const FBP f = cheby_blaschke(n, t).product;
      for (int j = 0; j < 24; ++j) {
        const Complex z = std::polar(0.3 + 0.6 * (j % 3) / 2.0, 2 * std::numbers::pi * j / 24);
        CHECK(std::abs(f(z) - eval_cheby_transcendental(n, t, z)) < 1e-8);
      }
    }
}

TEST_CASE("moduli and association uniqueness in t") {
  const auto f = cheby_blaschke(3, 0.5);
  CHECK(moduli_chi(f) == doctest::Approx(1.5));
  CHECK_THROWS_AS(moduli_chi(cheby_blaschke(2, 0.5)), DomainError);
  const DiskAutomorphism rot = DiskAutomorphism::rotation_by(Complex(-1));
  CHECK_FALSE(associated(compose(rot, compose(f.product, rot)), f.product).empty());
  CHECK(associated(cheby_blaschke(3, 0.6).product, f.product).empty());
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(cheby_blaschke(3, 0.0), DomainError);
  CHECK_THROWS_AS(cheby_blaschke(0, 0.5), DomainError);
}

TEST_CASE("Chebyshev representation: involutions generating a dihedral group") {
  for (int n = 2; n <= 8; ++n) {
    const auto [s, t] = chebyshev_representation(n);
    CHECK((s * s).is_identity());
    CHECK((t * t).is_identity());
    CHECK(is_transitive({s, t}));
    // the product is an n-cycle; the group is dihedral of order 2n
    CHECK((s * t).cycle_type() == std::vector<int>{n});
    CHECK(group_order({s, t}) == static_cast<std::size_t>(n == 2 ? 2 : 2 * n));
  }
}
