#pragma once

// Chebyshev-Blaschke products T_{n,t}: degree-n Blaschke products with real
// zeros in (-gamma(t), gamma(t)), normalized by T_{n,t}(gamma(t)) = gamma(nt).

#include <complex>
#include <utility>

#include "bdyn/blaschke.hpp"
#include "bdyn/permutation.hpp"

namespace bdyn {

struct ChebyBlaschke {
  int n = 1;
  double t = 1;
  FBP product;
  double chi = 1;  // n * t
  double construction_deviation = 0;
};

/// Zeros sqrt(k) cd((2j-1)K/n; k), j = 1..n, at tau = 4ti/pi; cross-checked
/// against eval_cheby_transcendental on 64 points (ConstructionError on
/// deviation above 1e-8).
ChebyBlaschke cheby_blaschke(int n, double t);

/// sqrt(k_n) cd(n (K_n/K) u; k_n) with cd(u; k) = z/sqrt(k).
Complex eval_cheby_transcendental(int n, double t, Complex z);

/// n t; only defined for n >= 3.
double moduli_chi(const ChebyBlaschke& f);

/// Alternation points of T_{n,t} on [-gamma(t), gamma(t)] where
/// |T| >= gamma(nt) (1 - 1e-6).  Grid of `grid` Chebyshev-spaced points,
/// discrete extrema refined by golden-section search.
int equioscillation_count(const ChebyBlaschke& f, int grid = 2048);

/// Max |T_{n,t}(x)| - gamma(nt) over samples of [-gamma(t), gamma(t)]
/// (nonpositive up to rounding when the interval maps into itself).
double interval_containment_excess(const ChebyBlaschke& f, int samples = 512);

template <typename T>
T chebyshev_poly(int n, T x) {
  if (n == 0) return T(1);
  T prev(1), cur = x;
  for (int i = 1; i < n; ++i) {
    T next = T(2) * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// (sigma, tau) as products of disjoint transpositions, n >= 2.
std::pair<Permutation, Permutation> chebyshev_representation(int n);

}  // namespace bdyn
