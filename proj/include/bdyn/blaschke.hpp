#pragma once

// Finite Blaschke products rho * prod (z - a_i)/(1 - conj(a_i) z) and
// automorphisms of the unit disk.

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bdyn/polynomial.hpp"

namespace bdyn {

struct Tolerances {
  double construction = 1e-12;
  double identity = 1e-8;
  double cluster = 1e-7;
};

/// Identity-check tolerance as a function of degree: 1e-8 up to degree 8,
/// 1e-7 up to 16, 1e-6 beyond.
double identity_tolerance(int degree);

class FiniteBlaschkeProduct {
 public:
  FiniteBlaschkeProduct() : rho_(1.0), zeros_(Eigen::VectorXcd::Zero(1)) {}

  /// Validates |rho| = 1 (within tol, then normalized) and |a| < 1.
  FiniteBlaschkeProduct(Complex rho, Eigen::VectorXcd zeros, double tol = 1e-12);

  Complex rho() const { return rho_; }
  const Eigen::VectorXcd& zeros() const { return zeros_; }
  std::vector<Complex> zero_list() const;
  int degree() const { return static_cast<int>(zeros_.size()); }

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;

  /// rho * prod (z - a_i)
  Poly numerator() const;
  /// prod (1 - conj(a_i) z)
  Poly denominator() const;

 private:
  Complex rho_;
  Eigen::VectorXcd zeros_;
};

using FBP = FiniteBlaschkeProduct;

FBP make_fbp(Complex rho, const std::vector<Complex>& zeros);
inline Complex eval(const FBP& f, Complex z) { return f(z); }
inline Complex eval_derivative(const FBP& f, Complex z) { return f.derivative(z); }

/// rho z^n
FBP power_map(int n, Complex rho = Complex(1));
/// f * g as functions (zeros concatenated).
FBP multiply(const FBP& f, const FBP& g);
/// mu * f for unimodular mu.
FBP rotate(const FBP& f, Complex mu);

/// f o g
FBP compose(const FBP& f, const FBP& g);
/// f o ... o f (k times); degree capped.
FBP iterate(const FBP& f, int k, int degree_cap = 4096);

struct CriticalPoint {
  Complex point;
  int multiplicity = 1;
};

struct CriticalData {
  std::vector<CriticalPoint> critical_points;  // interior, sorted lexicographically
  std::vector<Complex> critical_values;        // deduplicated
  int total_multiplicity() const;
};

/// Interior critical points (roots of the derivative numerator) and values.
CriticalData critical_data(const FBP& f);

/// z -> rotation * (z + center) / (1 + conj(center) z)
class DiskAutomorphism {
 public:
  DiskAutomorphism() = default;
  DiskAutomorphism(Complex rotation, Complex center);

  static DiskAutomorphism identity() { return {}; }
  /// iota_a(z) = (z + a)/(1 + conj(a) z)
  static DiskAutomorphism iota(Complex a) { return {Complex(1), a}; }
  static DiskAutomorphism rotation_by(Complex lambda) { return {lambda, Complex(0)}; }
  static DiskAutomorphism from_matrix(const Eigen::Matrix2cd& m);

  Complex rotation() const { return rotation_; }
  Complex center() const { return center_; }
  Complex operator()(Complex z) const;
  DiskAutomorphism inverse() const;
  Eigen::Matrix2cd matrix() const;
  FBP to_fbp() const;

 private:
  Complex rotation_{1.0};
  Complex center_{0.0};
};

/// a o b
DiskAutomorphism operator*(const DiskAutomorphism& a, const DiskAutomorphism& b);

FBP compose(const DiskAutomorphism& a, const FBP& f);
FBP compose(const FBP& f, const DiskAutomorphism& a);

/// Pseudo-hyperbolic distance |z - w| / |1 - conj(w) z|.
double pseudo_distance(Complex z, Complex w);

bool is_totally_ramified(const FBP& f);

/// f = outer o z^s o inner.  When the critical point p equals the critical
/// value, f = iota_p o (rho z^s) o iota_{-p} and self_conjugate is set.
struct TotallyRamifiedForm {
  Complex p;
  Complex critical_value;
  Complex rho;
  int s = 1;
  bool self_conjugate = false;
  DiskAutomorphism outer;
  DiskAutomorphism inner;
};

std::optional<TotallyRamifiedForm> totally_ramified_normal_form(const FBP& f);
FBP from_normal_form(const TotallyRamifiedForm& form);

/// Witness for f = eph o g o eps.
struct Association {
  DiskAutomorphism eps;
  DiskAutomorphism eph;
  double deviation = 0;
};

/// All witnesses found (empty when f and g are not associated).
std::vector<Association> associated(const FBP& f, const FBP& g, double tol = -1);

/// Largest of |rho_f - rho_g| and the matched zero distance; infinity when
/// degrees differ.
double fbp_distance(const FBP& f, const FBP& g);
bool equals_fbp(const FBP& f, const FBP& g, double tol);

/// Max over samples of ||f(z)| - 1| for z on the unit circle.
double boundary_modulus_deviation(const FBP& f, int samples = 1000);
/// Max |f(z) conj(f(1/conj z)) - 1| over sample points off the unit circle.
double reflection_deviation(const FBP& f, int samples = 64);
/// Max |f(z) - g(z)| on a grid of m points on the circle of radius r.
double sup_distance(const FBP& f, const FBP& g, int m = 200, double r = 0.9);

}  // namespace bdyn
