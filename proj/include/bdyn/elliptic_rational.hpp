#pragma once

// Elliptic rational functions n_tau, defined by n_tau(p_tau(z)) = p_{n tau}(n z)
// where p_tau is the Weierstrass function of the lattice (1, tau).

#include <vector>

#include "bdyn/elliptic.hpp"
#include "bdyn/polynomial.hpp"

namespace bdyn {

using Point = Extended<double>;
using Tau = ModularTau<double>;

struct EllipticRationalParams {
  int n = 2;
  Tau tau{Complex(0, 1)};

  EllipticRationalParams(int n_, Tau tau_);
};

struct ModularMatrix {
  long long a = 1, b = 0, c = 0, d = 1;
  long long det() const { return a * d - b * c; }
};

/// n_tau(x) = p_{n tau}(n z) with p_tau(z) = x.
Point ell_rat_eval(const EllipticRationalParams& params, const Point& x);

struct CriticalValueSet {
  std::vector<Point> values;  // finite values first (lexicographic), infinity last
  bool half_period_form = false;  // n >= 3: values are p_{n tau} on E_{n tau}[2] plus infinity
};

/// Images p_{n tau}(n z) of the points z with n z in the half lattice of
/// (1, n tau) but z outside the half lattice of (1, tau).
CriticalValueSet ell_rat_critical_values(const EllipticRationalParams& params);

/// n_tau as P(s)/Q(s) * value_scale in the scaled variable s = (x - center)/radius.
struct RationalFit {
  int n = 0;
  Poly numerator;
  Poly denominator;
  Complex center;
  double radius = 1;
  double value_scale = 1;
  double holdout_residual = 0;

  Point operator()(const Point& x) const;
  /// Critical values of the fitted function (infinity for values beyond
  /// 1e7 * value_scale).
  std::vector<Point> critical_values() const;
};

/// Interpolation from 4n+4 samples on a circle enclosing the poles, SVD null
/// vector; n <= 8.  NumericalError when the 2n holdout residual exceeds 1e-6.
RationalFit ell_rat_fit(const EllipticRationalParams& params);

bool gamma0_member(const ModularMatrix& m, int n);
Tau gamma0_apply(const ModularMatrix& m, const Tau& tau);

struct EquivalenceReport {
  Tau tau2{Complex(0, 1)};
  Complex gamma;  // c tau + d; the conjugators are x -> gamma^2 x
  double max_deviation = 0;
  double j_deviation = 0;  // relative, critical-value j-invariants (n >= 3)
  bool verified = false;
};

/// Checks gamma^2 n_tau(x) = n_{M tau}(gamma^2 x) on 32 samples and compares
/// the cross-ratio invariant of the critical values.  DomainError when M is
/// not in Gamma_0(n).
EquivalenceReport equivalence_check(int n, const Tau& tau, const ModularMatrix& m);

/// p_tau(j/m + i Im(tau)/4), j = 0..m-1.
std::vector<Complex> jordan_loop(const Tau& tau, int m);

/// Winding number of the closed polygon around p.
int winding_number(const std::vector<Complex>& loop, Complex p);

/// j-invariant of the cross-ratio of four distinct points of the sphere.
Complex j_invariant(const std::vector<Point>& four);

/// Chordal distance between two point sets matched optimally.
double point_set_distance(const std::vector<Point>& a, const std::vector<Point>& b);

}  // namespace bdyn
