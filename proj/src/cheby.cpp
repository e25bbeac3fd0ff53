#include "bdyn/cheby.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bdyn/elliptic.hpp"
#include "bdyn/errors.hpp"

namespace bdyn {

namespace {

ModularTau<double> tau_of_t(double t) { return ModularTau<double>(Complex(0, 4.0 * t / std::numbers::pi)); }

void check_params(int n, double t) {
  if (n < 1) throw DomainError("Chebyshev-Blaschke degree must be >= 1");
  if (!(t > 0) || !std::isfinite(t)) throw DomainError("Chebyshev-Blaschke parameter t must be > 0");
}

}  // namespace

Complex eval_cheby_transcendental(int n, double t, Complex z) {
  check_params(n, t);
  const auto m = real_modulus(modulus_data(tau_of_t(t)));
  const auto mn = real_modulus(modulus_data(tau_of_t(n * t)));
  const double sk = std::sqrt(m.k);
  const Complex u = inverse_cd(Extended<double>(z / sk), m);
  const auto v = cd(static_cast<double>(n) * (mn.K / m.K) * u, mn);
  if (v.infinite) return {std::numeric_limits<double>::infinity(), 0.0};
  return std::sqrt(mn.k) * v.value;
}

ChebyBlaschke cheby_blaschke(int n, double t) {
  check_params(n, t);
  const auto m = real_modulus(modulus_data(tau_of_t(t)));
  const double gamma_t = std::sqrt(m.k);

  std::vector<Complex> zeros;
  for (int j = 1; j <= n; ++j) {
    const auto c = cd(Complex((2.0 * j - 1.0) * m.K / n), m);
    zeros.push_back(gamma_t * c.value.real());
  }
  FBP unnormalized = make_fbp(Complex(1), zeros);
  const Complex at_gamma = unnormalized(Complex(gamma_t));
  const Complex rho = at_gamma.real() >= 0 ? 1.0 : -1.0;
  FBP product = make_fbp(rho, zeros);

  double dev = 0;
  if (n > 1) {
    constexpr int kPoints = 64;
    for (int j = 0; j < kPoints / 2; ++j) {
      const double x = gamma_t * std::cos(std::numbers::pi * (j + 0.5) / (kPoints / 2));
      dev = std::max(dev, std::abs(product(x) - eval_cheby_transcendental(n, t, x)));
      const Complex z = std::polar(0.8, 2.0 * std::numbers::pi * (j + 0.3) / (kPoints / 2));
      dev = std::max(dev, std::abs(product(z) - eval_cheby_transcendental(n, t, z)));
    }
    if (!(dev <= 1e-8)) {
      std::ostringstream msg;
      msg << "Chebyshev-Blaschke cross-validation failed for n = " << n << ", t = " << t << " (deviation " << dev
          << ")";
      throw ConstructionError(msg.str(), dev);
    }
  }
  return {n, t, product, n * t, dev};
}

double moduli_chi(const ChebyBlaschke& f) {
  if (f.n < 3) throw DomainError("the moduli chi is only defined for degree >= 3");
  return f.n * f.t;
}

namespace {

double restricted(const FBP& f, double x) { return f(Complex(x)).real(); }

// Golden-section search for the extremum of sign * f on [a, b].
double refine_extremum(const FBP& f, double a, double b, double sign) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = sign * restricted(f, c), fd = sign * restricted(f, d);
  for (int it = 0; it < 80 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = sign * restricted(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = sign * restricted(f, d);
    }
  }
  return std::max(fc, fd);
}

}  // namespace

int equioscillation_count(const ChebyBlaschke& f, int grid) {
  const double gamma_t = gamma_of_t(f.t);
  const double level = gamma_of_t(f.n * f.t) * (1 - 1e-6);
  std::vector<double> xs(static_cast<std::size_t>(grid)), ys(xs.size());
  for (int i = 0; i < grid; ++i) {
    xs[i] = -gamma_t * std::cos(std::numbers::pi * i / (grid - 1));
    ys[i] = restricted(f.product, xs[i]);
  }
  // signed extremal values, in order along the interval
  std::vector<double> extrema;
  for (int i = 0; i < grid; ++i) {
    const bool left = i == 0 || std::abs(ys[i]) >= std::abs(ys[i - 1]);
    const bool right = i == grid - 1 || std::abs(ys[i]) >= std::abs(ys[i + 1]);
    if (!(left && right)) continue;
    double v = ys[i];
    if (i > 0 && i < grid - 1) {
      const double sign = v >= 0 ? 1.0 : -1.0;
      v = sign * refine_extremum(f.product, xs[i - 1], xs[i + 1], sign);
    }
    extrema.push_back(v);
  }
  int count = 0;
  double last_sign = 0;
  for (const double v : extrema) {
    if (std::abs(v) < level) continue;
    const double s = v > 0 ? 1.0 : -1.0;
    if (s != last_sign) ++count;
    last_sign = s;
  }
  return count;
}

double interval_containment_excess(const ChebyBlaschke& f, int samples) {
  const double gamma_t = gamma_of_t(f.t);
  const double gamma_nt = gamma_of_t(f.n * f.t);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double x = -gamma_t + 2 * gamma_t * i / (samples - 1);
    worst = std::max(worst, std::abs(f.product(Complex(x))) - gamma_nt);
  }
  return worst;
}

std::pair<Permutation, Permutation> chebyshev_representation(int n) {
  if (n < 2) throw DomainError("Chebyshev representation needs n >= 2");
  std::vector<std::vector<int>> sigma, tau{{1, 2}};
  const int k = n / 2;
  if (n % 2 == 0) {
    for (int i = 2; i <= k; ++i) sigma.push_back({i, 2 * k + 2 - i});
    for (int i = 3; i <= k + 1; ++i) tau.push_back({i, 2 * k + 3 - i});
  } else {
    for (int i = 2; i <= k + 1; ++i) sigma.push_back({i, 2 * k + 3 - i});
    for (int i = 3; i <= k + 1; ++i) tau.push_back({i, 2 * k + 4 - i});
  }
  return {Permutation::from_cycles(n, sigma), Permutation::from_cycles(n, tau)};
}

}  // namespace bdyn
