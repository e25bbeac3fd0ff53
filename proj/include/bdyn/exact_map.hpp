#pragma once

// Exact Blaschke products over Q(i) and the rational maps they induce on
// P^1(Q(i)), kept as pairs of homogeneous forms with Z[i] coefficients.

#include <cstdint>
#include <vector>

#include "bdyn/blaschke.hpp"
#include "bdyn/gaussian.hpp"

namespace bdyn {

/// c[k] is the coefficient of X^k Y^(d-k).
using HomogeneousForm = std::vector<GaussianInteger>;

class ExactBlaschke {
 public:
  /// Requires |rho|^2 = 1 and |a|^2 < 1 exactly.
  ExactBlaschke(GaussianRational rho, std::vector<GaussianRational> zeros);

  const GaussianRational& rho() const { return rho_; }
  const std::vector<GaussianRational>& zeros() const { return zeros_; }
  int degree() const { return static_cast<int>(zeros_.size()); }
  FBP to_fbp() const;

 private:
  GaussianRational rho_;
  std::vector<GaussianRational> zeros_;
};

/// Exact rho z^n.
ExactBlaschke exact_power_map(int n);

/// (X : Y) -> (F(X, Y) : G(X, Y)) with F, G of common degree and no
/// common factor.
class ExactMap {
 public:
  ExactMap(HomogeneousForm f, HomogeneousForm g);
  explicit ExactMap(const ExactBlaschke& b);

  int degree() const { return static_cast<int>(f_.size()) - 1; }
  const HomogeneousForm& f() const { return f_; }
  const HomogeneousForm& g() const { return g_; }
  /// Res(F, G); nonzero by construction.
  const GaussianInteger& resultant() const { return res_; }

  GaussianRational operator()(const GaussianRational& x) const;

 private:
  HomogeneousForm f_;
  HomogeneousForm g_;
  GaussianInteger res_;
};

/// a o b
ExactMap compose(const ExactMap& a, const ExactMap& b);

/// Sylvester determinant by fraction-free elimination.
GaussianInteger resultant(const HomogeneousForm& f, const HomogeneousForm& g);

/// Arithmetic in F_p with p = 1 mod 4, where i has the image sqrt(-1).
class ModularField {
 public:
  explicit ModularField(std::uint64_t p);

  std::uint64_t prime() const { return p_; }
  std::uint64_t sqrt_minus_one() const { return i_; }
  std::uint64_t reduce(const mpz_class& z) const;
  std::uint64_t reduce(const GaussianInteger& z) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inverse(std::uint64_t a) const;

 private:
  std::uint64_t p_;
  std::uint64_t i_;
};

bool is_prime_u64(std::uint64_t n);
/// Primes p = 1 mod 4 below 2^61 in decreasing order.
std::vector<std::uint64_t> fingerprint_primes(int count);

/// Image of a P^1(Q(i)) point in P^1(F_p): x mod p, or p for infinity.
std::uint64_t reduce_point(const ModularField& field, const GaussianRational& x);

/// The map reduced mod p; valid when p does not divide Norm(Res(F, G)).
class ModularMap {
 public:
  ModularMap(const ExactMap& map, const ModularField& field);
  bool good_reduction() const { return good_; }
  std::uint64_t operator()(std::uint64_t x) const;

 private:
  const ModularField* field_;
  std::vector<std::uint64_t> f_;
  std::vector<std::uint64_t> g_;
  bool good_ = true;
};

}  // namespace bdyn
