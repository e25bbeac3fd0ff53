#pragma once

// Dense complex polynomials in ascending coefficient order, plus root
// finding with multiplicity recovery.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace bdyn {

using Complex = std::complex<double>;
using Poly = Eigen::VectorXcd;  // p[0] + p[1] z + ... + p[n] z^n

struct RootCluster {
  Complex center;
  int multiplicity = 1;
};

Poly poly_from_roots(const std::vector<Complex>& roots, Complex lead = Complex(1));
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, Complex s);
Poly poly_derivative(const Poly& p);
Complex poly_eval(const Poly& p, Complex z);

/// Drops leading coefficients below rel_tol * max|coeff|.  A dropped
/// coefficient corresponds to a root at infinity.
Poly poly_trim(const Poly& p, double rel_tol = 1e-14);

/// Taylor coefficients of p at c: p(c + h) = sum b_j h^j.
Poly poly_taylor_shift(const Poly& p, Complex c);

/// Roots with multiplicity (each repeated).  Balanced companion matrix,
/// eigenvalues, two Newton polishing steps, then clustering.
std::vector<Complex> poly_roots(const Poly& p);

/// Roots grouped into clusters: merged unconditionally within merge_radius,
/// and merged within loose_radius when the Taylor expansion at the mean
/// certifies a multiple root.
std::vector<RootCluster> poly_root_clusters(const Poly& p, double merge_radius = 1e-7,
                                            double loose_radius = 1e-3);

/// Min-cost assignment of two equal-size point sets; returns the largest
/// matched distance (infinity if the sizes differ).
double matched_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Hungarian algorithm on a square cost matrix; returns column assigned to each row.
std::vector<int> hungarian(const Eigen::MatrixXd& cost);

}  // namespace bdyn
