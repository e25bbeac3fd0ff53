#include "bdyn/elliptic_rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/SVD>

#include "bdyn/errors.hpp"

namespace bdyn {

namespace {

bool point_less(const Point& a, const Point& b) {
  if (a.infinite != b.infinite) return b.infinite;
  if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
  return a.value.imag() < b.value.imag();
}

void add_unique(std::vector<Point>& set, const Point& p, double tol) {
  for (const auto& q : set)
    if (chordal_distance(p, q) <= tol) return;
  set.push_back(p);
}

}  // namespace

EllipticRationalParams::EllipticRationalParams(int n_, Tau tau_) : n(n_), tau(tau_) {
  if (n < 2) throw DomainError("elliptic rational functions need n >= 2");
}

Point ell_rat_eval(const EllipticRationalParams& params, const Point& x) {
  if (x.infinite) return Point::at_infinity();
  const Complex z = inverse_p(x, params.tau);
  return weierstrass_p(static_cast<double>(params.n) * z, params.tau.scaled(params.n));
}

CriticalValueSet ell_rat_critical_values(const EllipticRationalParams& params) {
  const int n = params.n;
  const Complex tau = params.tau.value();
  const Tau ntau = params.tau.scaled(n);
  CriticalValueSet out;
  out.half_period_form = n >= 3;
  for (int b = 0; b <= 1; ++b)
    for (int a = 0; a < 2 * n; ++a) {
      if (a == 0 || a == n) continue;
      const Complex z = static_cast<double>(a) / (2.0 * n) + static_cast<double>(b) * tau / 2.0;
      add_unique(out.values, weierstrass_p(static_cast<double>(n) * z, ntau), 1e-9);
    }
  std::sort(out.values.begin(), out.values.end(), point_less);
  return out;
}

Point RationalFit::operator()(const Point& x) const {
  if (x.infinite) {
    if (std::abs(denominator[n]) > 1e-8 * denominator.cwiseAbs().maxCoeff()) return Point(numerator[n] / denominator[n] * value_scale);
    return Point::at_infinity();
  }
  const Complex s = (x.value - center) / radius;
  const Complex q = poly_eval(denominator, s);
  if (q == Complex(0)) return Point::at_infinity();
  return Point(poly_eval(numerator, s) / q * value_scale);
}

std::vector<Point> RationalFit::critical_values() const {
  const Poly p = poly_trim(numerator, 1e-10);
  const Poly q = poly_trim(denominator, 1e-10);
  const Poly w = poly_add(poly_mul(poly_derivative(p), q), poly_scale(poly_mul(p, poly_derivative(q)), -1.0));
  std::vector<Point> out;
  const double qscale = q.cwiseAbs().maxCoeff();
  const auto clusters = poly_root_clusters(poly_trim(w, 1e-12));
  int found = 0;
  for (const auto& c : clusters) {
    found += c.multiplicity;
    const Complex qv = poly_eval(q, c.center);
    const Complex v = poly_eval(p, c.center) / qv * value_scale;
    if (std::abs(qv) < 1e-12 * qscale || std::abs(v) > 1e7 * value_scale)
      add_unique(out, Point::at_infinity(), 1e-7);
    else
      add_unique(out, Point(v), 1e-7);
  }
  // a drop of two or more degrees in P'Q - PQ' puts a critical point at infinity
  const int deg_p = static_cast<int>(p.size()) - 1, deg_q = static_cast<int>(q.size()) - 1;
  const int expected = 2 * std::max(deg_p, deg_q) - 2;
  if (found < expected) add_unique(out, (*this)(Point::at_infinity()), 1e-7);
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

RationalFit ell_rat_fit(const EllipticRationalParams& params) {
  const int n = params.n;
  if (n > 8) throw DomainError("ell_rat_fit is limited to n <= 8");
  const auto wd = weierstrass_data(params.tau);
  double scale = 0;
  for (const auto& e : wd.e_values) scale = std::max(scale, std::abs(e));
  const Complex center = Complex(0.1, 0.07) * scale;
  double reach = 0;
  for (const auto& e : wd.e_values) reach = std::max(reach, std::abs(e - center));
  for (int j = 1; j < n; ++j) {
    const Point pole = weierstrass_p(Complex(static_cast<double>(j) / n), params.tau);
    if (pole.finite()) reach = std::max(reach, std::abs(pole.value - center));
  }
  RationalFit fit;
  fit.n = n;
  fit.center = center;
  fit.radius = 1.6 * reach;

  const int samples = 4 * n + 4;
  std::vector<Complex> s(samples), y(samples);
  double yscale = 0;
  for (int k = 0; k < samples; ++k) {
    s[k] = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.123) / samples);
    const Point v = ell_rat_eval(params, Point(center + fit.radius * s[k]));
    if (v.infinite) throw NumericalError("ell_rat_fit: sample landed on a pole");
    y[k] = v.value;
    yscale = std::max(yscale, std::abs(y[k]));
  }
  fit.value_scale = yscale;
  Eigen::MatrixXcd a(samples, 2 * (n + 1));
  for (int k = 0; k < samples; ++k) {
    Complex pw(1);
    const Complex yk = y[k] / yscale;
    for (int j = 0; j <= n; ++j) {
      a(k, j) = pw;
      a(k, n + 1 + j) = -yk * pw;
      pw *= s[k];
    }
    a.row(k) /= a.row(k).norm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXcd v = svd.matrixV().col(2 * (n + 1) - 1);
  fit.numerator = v.head(n + 1);
  fit.denominator = v.tail(n + 1);

  double residual = 0;
  for (int k = 0; k < 2 * n; ++k) {
    const Complex x = center + 0.8 * fit.radius * std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.61) / (2 * n));
    const Point want = ell_rat_eval(params, Point(x));
    const Point got = fit(Point(x));
    if (want.infinite || got.infinite) continue;
    residual = std::max(residual, std::abs(want.value - got.value) / std::max(yscale, std::abs(want.value)));
  }
  fit.holdout_residual = residual;
  if (!(residual < 1e-6)) {
    std::ostringstream msg;
    msg << "ell_rat_fit: holdout residual " << residual << " exceeds 1e-6";
    throw NumericalError(msg.str());
  }
  return fit;
}

bool gamma0_member(const ModularMatrix& m, int n) {
  if (m.det() != 1) throw DomainError("modular matrix must have determinant 1");
  if (n < 1) throw DomainError("Gamma_0(n) needs n >= 1");
  return m.c % n == 0;
}

Tau gamma0_apply(const ModularMatrix& m, const Tau& tau) {
  if (m.det() != 1) throw DomainError("modular matrix must have determinant 1");
  const Complex t = tau.value();
  return Tau((static_cast<double>(m.a) * t + static_cast<double>(m.b)) /
             (static_cast<double>(m.c) * t + static_cast<double>(m.d)));
}

Complex j_invariant(const std::vector<Point>& four) {
  if (four.size() != 4) throw DomainError("j_invariant needs four points");
  std::vector<Point> pts = four;
  std::stable_partition(pts.begin(), pts.end(), [](const Point& p) { return p.finite(); });
  if (pts[2].infinite) throw DomainError("j_invariant: points must be distinct");
  const Complex z1 = pts[0].value, z2 = pts[1].value, z3 = pts[2].value;
  Complex lambda;
  if (pts[3].infinite) {
    lambda = (z3 - z1) / (z3 - z2);
  } else {
    const Complex z4 = pts[3].value;
    lambda = (z3 - z1) * (z4 - z2) / ((z3 - z2) * (z4 - z1));
  }
  const Complex l2 = lambda * lambda - lambda + 1.0;
  return 256.0 * l2 * l2 * l2 / (lambda * lambda * (lambda - 1.0) * (lambda - 1.0));
}

double point_set_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const auto n = static_cast<Eigen::Index>(a.size());
  if (n == 0) return 0;
  Eigen::MatrixXd cost(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (a[i].infinite && b[j].infinite) cost(i, j) = 0;
      else if (a[i].infinite || b[j].infinite) cost(i, j) = 1e300;
      else cost(i, j) = std::abs(a[i].value - b[j].value);
    }
  const auto assign = hungarian(cost);
  double worst = 0;
  for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, cost(i, assign[i]));
  return worst >= 1e300 ? std::numeric_limits<double>::infinity() : worst;
}

EquivalenceReport equivalence_check(int n, const Tau& tau, const ModularMatrix& m) {
  if (!gamma0_member(m, n)) {
    std::ostringstream msg;
    msg << "matrix [[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]] is not in Gamma_0(" << n << ")";
    throw DomainError(msg.str());
  }
  EquivalenceReport rep;
  rep.tau2 = gamma0_apply(m, tau);
  rep.gamma = static_cast<double>(m.c) * tau.value() + static_cast<double>(m.d);
  const EllipticRationalParams p1(n, tau), p2(n, rep.tau2);
  const Complex g2 = rep.gamma * rep.gamma;
  constexpr int kSamples = 32;
  for (int k = 0; k < kSamples; ++k) {
    // generic sample points p_tau(z) on a grid of the period cell
    const Complex z = (k % 8 + 0.37) / 8.0 + (k / 8 + 0.29) / 4.0 * tau.value();
    const Point x = weierstrass_p(z, tau);
    const Point lhs = ell_rat_eval(p1, x);
    const Point rhs = ell_rat_eval(p2, Point(g2 * x.value));
    if (lhs.infinite || rhs.infinite) {
      rep.max_deviation = std::max(rep.max_deviation, lhs.infinite == rhs.infinite ? 0.0 : 1.0);
      continue;
    }
    const Complex want = g2 * lhs.value;
    rep.max_deviation = std::max(rep.max_deviation, std::abs(want - rhs.value) / std::max(1.0, std::abs(want)));
  }
  if (n >= 3) {
    const auto c1 = ell_rat_critical_values(p1).values;
    const auto c2 = ell_rat_critical_values(p2).values;
    const Complex j1 = j_invariant(c1), j2 = j_invariant(c2);
    rep.j_deviation = std::abs(j1 - j2) / std::max(1.0, std::abs(j1));
  }
  rep.verified = rep.max_deviation <= 1e-5 && rep.j_deviation <= 1e-6;
  return rep;
}

std::vector<Complex> jordan_loop(const Tau& tau, int m) {
  if (m < 8) throw DomainError("jordan_loop needs m >= 8");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(m));
  const double y = tau.value().imag() / 4.0;
  for (int j = 0; j < m; ++j) {
    const Point p = weierstrass_p(Complex(static_cast<double>(j) / m, y), tau);
    out.push_back(p.value);
  }
  return out;
}

int winding_number(const std::vector<Complex>& loop, Complex p) {
  double total = 0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Complex a = loop[i] - p;
    const Complex b = loop[(i + 1) % loop.size()] - p;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace bdyn
