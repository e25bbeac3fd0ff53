#include "bdyn/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bdyn/errors.hpp"

namespace bdyn {

namespace {

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

Complex blaschke_factor(Complex a, Complex z) { return (z - a) / (1.0 - std::conj(a) * z); }

}  // namespace

double identity_tolerance(int degree) {
  if (degree <= 8) return 1e-8;
  if (degree <= 16) return 1e-7;
  return 1e-6;
}

FiniteBlaschkeProduct::FiniteBlaschkeProduct(Complex rho, Eigen::VectorXcd zeros, double tol)
    : rho_(rho), zeros_(std::move(zeros)) {
  if (!std::isfinite(rho.real()) || !std::isfinite(rho.imag()) || std::abs(std::abs(rho) - 1.0) > tol) {
    std::ostringstream msg;
    msg << "rho must be unimodular, got |rho| = " << std::abs(rho);
    throw DomainError(msg.str());
  }
  rho_ /= std::abs(rho_);
  if (zeros_.size() == 0) throw DomainError("a finite Blaschke product needs at least one zero");
  for (Eigen::Index i = 0; i < zeros_.size(); ++i) {
    const Complex a = zeros_[i];
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !(std::abs(a) < 1.0)) {
      std::ostringstream msg;
      msg << "zero " << a << " is not in the open unit disk";
      throw DomainError(msg.str());
    }
  }
}

std::vector<Complex> FiniteBlaschkeProduct::zero_list() const {
  return {zeros_.data(), zeros_.data() + zeros_.size()};
}

Complex FiniteBlaschkeProduct::operator()(Complex z) const {
  Complex acc = rho_;
  for (Eigen::Index i = 0; i < zeros_.size(); ++i) acc *= blaschke_factor(zeros_[i], z);
  return acc;
}

Complex FiniteBlaschkeProduct::derivative(Complex z) const {
  const Eigen::Index n = zeros_.size();
  std::vector<Complex> factor(n), prefix(n + 1), suffix(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) factor[i] = blaschke_factor(zeros_[i], z);
  prefix[0] = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * factor[i];
  suffix[n] = 1.0;
  for (Eigen::Index i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * factor[i];
  Complex acc(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex a = zeros_[i];
    const Complex den = 1.0 - std::conj(a) * z;
    acc += (1.0 - std::norm(a)) / (den * den) * prefix[i] * suffix[i + 1];
  }
  return rho_ * acc;
}

Poly FiniteBlaschkeProduct::numerator() const { return poly_from_roots(zero_list(), rho_); }

Poly FiniteBlaschkeProduct::denominator() const {
  Poly p = Poly::Ones(1);
  for (Eigen::Index i = 0; i < zeros_.size(); ++i) {
    Poly lin(2);
    lin << 1.0, -std::conj(zeros_[i]);
    p = poly_mul(p, lin);
  }
  return p;
}

FBP make_fbp(Complex rho, const std::vector<Complex>& zeros) {
  Eigen::VectorXcd z(static_cast<Eigen::Index>(zeros.size()));
  for (std::size_t i = 0; i < zeros.size(); ++i) z[static_cast<Eigen::Index>(i)] = zeros[i];
  return FBP(rho, z);
}

FBP power_map(int n, Complex rho) {
  if (n < 1) throw DomainError("power map needs n >= 1");
  return FBP(rho, Eigen::VectorXcd::Zero(n));
}

FBP multiply(const FBP& f, const FBP& g) {
  Eigen::VectorXcd z(f.degree() + g.degree());
  z << f.zeros(), g.zeros();
  return FBP(f.rho() * g.rho(), z);
}

FBP rotate(const FBP& f, Complex mu) { return FBP(mu * f.rho(), f.zeros()); }

namespace {

// Unimodular constant c with c * prod B_a(z) = h(z), read off at a point
// away from the zeros.
Complex fit_rho(const std::vector<Complex>& zeros, const auto& h) {
  static constexpr Complex probes[] = {{0.987, 0.0}, {0.0, 0.61}, {-0.73, 0.0}, {0.31, -0.52}, {-0.2, -0.8}};
  Complex best_rho(1);
  double best_mag = -1;
  for (const Complex z0 : probes) {
    Complex prod(1);
    for (const Complex a : zeros) prod *= blaschke_factor(a, z0);
    if (std::abs(prod) > best_mag) {
      best_mag = std::abs(prod);
      best_rho = h(z0) / prod;
    }
    if (best_mag > 1e-3) break;
  }
  if (!(best_mag > 0) || !std::isfinite(std::abs(best_rho))) throw NumericalError("could not fix the unimodular constant");
  return best_rho / std::abs(best_rho);
}

}  // namespace

FBP compose(const FBP& f, const FBP& g) {
  const Poly num = g.numerator();
  const Poly den = g.denominator();
  std::vector<Complex> zeros;
  zeros.reserve(static_cast<std::size_t>(f.degree()) * g.degree());
  for (Eigen::Index i = 0; i < f.zeros().size(); ++i) {
    const Poly p = poly_add(num, poly_scale(den, -f.zeros()[i]));
    const auto roots = poly_roots(p);
    if (static_cast<int>(roots.size()) != g.degree())
      throw NumericalError("compose: root count does not match the inner degree");
    for (const Complex r : roots) {
      if (!(std::abs(r) < 1.0 - 1e-12)) {
        std::ostringstream msg;
        msg << "compose: computed zero " << r << " is not inside the disk";
        throw NumericalError(msg.str());
      }
      zeros.push_back(r);
    }
  }
  const Complex rho = fit_rho(zeros, [&](Complex z) { return f(g(z)); });
  return make_fbp(rho, zeros);
}

FBP iterate(const FBP& f, int k, int degree_cap) {
  if (k < 1) throw DomainError("iterate needs k >= 1");
  double deg = std::pow(static_cast<double>(f.degree()), k);
  if (deg > degree_cap) {
    std::ostringstream msg;
    msg << "iterate: degree " << deg << " exceeds the cap " << degree_cap;
    throw DomainError(msg.str());
  }
  FBP out = f;
  for (int i = 1; i < k; ++i) out = compose(out, f);
  return out;
}

int CriticalData::total_multiplicity() const {
  int m = 0;
  for (const auto& c : critical_points) m += c.multiplicity;
  return m;
}

CriticalData critical_data(const FBP& f) {
  const int n = f.degree();
  if (n < 2) throw DomainError("critical data needs degree >= 2");
  const auto zs = f.zero_list();
  // W = sum_i (1 - |a_i|^2) prod_{j != i} (z - a_j)(1 - conj(a_j) z)
  std::vector<Poly> quad(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Poly q(3);
    const Complex a = zs[j];
    q << -a, 1.0 + std::norm(a), -std::conj(a);
    quad[j] = q;
  }
  std::vector<Poly> prefix(n + 1), suffix(n + 1);
  prefix[0] = Poly::Ones(1);
  for (int j = 0; j < n; ++j) prefix[j + 1] = poly_mul(prefix[j], quad[j]);
  suffix[n] = Poly::Ones(1);
  for (int j = n - 1; j >= 0; --j) suffix[j] = poly_mul(suffix[j + 1], quad[j]);
  Poly w = Poly::Zero(2 * n - 1);
  for (int i = 0; i < n; ++i) w += poly_mul(prefix[i], suffix[i + 1]) * (1.0 - std::norm(zs[i]));

  CriticalData out;
  for (const auto& c : poly_root_clusters(w)) {
    if (std::abs(c.center) < 1.0) out.critical_points.push_back({c.center, c.multiplicity});
  }
  if (out.total_multiplicity() != n - 1) {
    std::ostringstream msg;
    msg << "critical_data: found interior multiplicity " << out.total_multiplicity() << ", expected " << n - 1;
    throw NumericalError(msg.str());
  }
  std::sort(out.critical_points.begin(), out.critical_points.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return lex_less(a.point, b.point); });
  for (const auto& c : out.critical_points) {
    const Complex v = f(c.point);
    bool seen = false;
    for (const Complex u : out.critical_values) seen = seen || std::abs(u - v) <= 1e-7;
    if (!seen) out.critical_values.push_back(v);
  }
  std::sort(out.critical_values.begin(), out.critical_values.end(), lex_less);
  return out;
}

DiskAutomorphism::DiskAutomorphism(Complex rotation, Complex center) : rotation_(rotation), center_(center) {
  if (std::abs(std::abs(rotation) - 1.0) > 1e-9) throw DomainError("automorphism rotation must be unimodular");
  if (!(std::abs(center) < 1.0)) throw DomainError("automorphism center must lie in the open disk");
  rotation_ /= std::abs(rotation_);
}

DiskAutomorphism DiskAutomorphism::from_matrix(const Eigen::Matrix2cd& m) {
  const Complex d = m(1, 1);
  if (std::abs(d) == 0.0) throw NumericalError("matrix is not a disk automorphism");
  const Complex a = m(0, 0) / d;
  const Complex b = m(0, 1) / d;
  return {a / std::abs(a), b / a};
}

Complex DiskAutomorphism::operator()(Complex z) const {
  return rotation_ * (z + center_) / (1.0 + std::conj(center_) * z);
}

DiskAutomorphism DiskAutomorphism::inverse() const { return {std::conj(rotation_), -rotation_ * center_}; }

Eigen::Matrix2cd DiskAutomorphism::matrix() const {
  Eigen::Matrix2cd m;
  m << rotation_, rotation_ * center_, std::conj(center_), 1.0;
  return m;
}

FBP DiskAutomorphism::to_fbp() const { return make_fbp(rotation_, {-center_}); }

DiskAutomorphism operator*(const DiskAutomorphism& a, const DiskAutomorphism& b) {
  return DiskAutomorphism::from_matrix(a.matrix() * b.matrix());
}

FBP compose(const DiskAutomorphism& a, const FBP& f) { return compose(a.to_fbp(), f); }
FBP compose(const FBP& f, const DiskAutomorphism& a) { return compose(f, a.to_fbp()); }

double pseudo_distance(Complex z, Complex w) { return std::abs(z - w) / std::abs(1.0 - std::conj(w) * z); }

bool is_totally_ramified(const FBP& f) { return critical_data(f).critical_points.size() == 1; }

std::optional<TotallyRamifiedForm> totally_ramified_normal_form(const FBP& f) {
  const auto cd = critical_data(f);
  if (cd.critical_points.size() != 1) return std::nullopt;
  TotallyRamifiedForm form;
  form.p = cd.critical_points[0].point;
  form.s = f.degree();
  form.critical_value = f(form.p);
  const auto iota_p = DiskAutomorphism::iota(form.p);
  const auto iota_mv = DiskAutomorphism::iota(-form.critical_value);
  constexpr double w = 0.5;
  const Complex rho = iota_mv(f(iota_p(w))) / std::pow(w, form.s);
  form.rho = rho / std::abs(rho);
  form.self_conjugate = std::abs(form.p - form.critical_value) < 1e-8;
  form.outer = DiskAutomorphism::iota(form.critical_value) * DiskAutomorphism::rotation_by(form.rho);
  form.inner = DiskAutomorphism::iota(-form.p);
  return form;
}

FBP from_normal_form(const TotallyRamifiedForm& form) {
  // z^s o iota_{-p} has the single zero p of multiplicity s and rho = 1
  const FBP inner_power(Complex(1), Eigen::VectorXcd::Constant(form.s, form.p));
  return compose(form.outer, inner_power);
}

namespace {

double witness_deviation(const FBP& f, const FBP& g, const DiskAutomorphism& eps, const DiskAutomorphism& eph) {
  const int m = 2 * f.degree() + 1;
  double dev = 0;
  for (int j = 0; j < m; ++j) {
    const double th = 2.0 * std::numbers::pi * (j + 0.25) / m;
    for (const double r : {1.0, 0.55}) {
      const Complex z = std::polar(r, th);
      dev = std::max(dev, std::abs(f(z) - eph(g(eps(z)))));
    }
  }
  return dev;
}

// The automorphism sending z1 -> w1 and z2 -> w2, if the pseudo-hyperbolic
// distances agree.
std::optional<DiskAutomorphism> two_point_map(Complex z1, Complex z2, Complex w1, Complex w2, double tol) {
  const Complex u = DiskAutomorphism::iota(-z1)(z2);
  const Complex v = DiskAutomorphism::iota(-w1)(w2);
  if (std::abs(std::abs(u) - std::abs(v)) > tol || std::abs(u) < 1e-9) return std::nullopt;
  return DiskAutomorphism::iota(w1) * DiskAutomorphism::rotation_by(v / u) * DiskAutomorphism::iota(-z1);
}

}  // namespace

std::vector<Association> associated(const FBP& f, const FBP& g, double tol) {
  std::vector<Association> out;
  if (f.degree() != g.degree()) return out;
  if (tol <= 0) tol = identity_tolerance(f.degree());
  auto as_automorphism = [](const FBP& h) { return DiskAutomorphism(h.rho(), -h.zeros()[0]); };
  if (f.degree() == 1) {
    out.push_back({DiskAutomorphism::identity(), as_automorphism(f) * as_automorphism(g).inverse(), 0.0});
    return out;
  }
  const auto cf = critical_data(f);
  const auto cg = critical_data(g);
  if (cf.critical_points.size() == 1 || cg.critical_points.size() == 1) {
    if (cf.critical_points.size() != cg.critical_points.size()) return out;
    const auto ff = *totally_ramified_normal_form(f);
    const auto fg = *totally_ramified_normal_form(g);
    Association a{fg.inner.inverse() * ff.inner, ff.outer * fg.outer.inverse(), 0.0};
    a.deviation = witness_deviation(f, g, a.eps, a.eph);
    if (a.deviation <= tol) out.push_back(a);
    return out;
  }
  if (cf.critical_points.size() != cg.critical_points.size()) return out;

  const auto& p1 = cf.critical_points[0];
  const auto& p2 = cf.critical_points[1];
  static constexpr Complex samples[] = {{0.1, 0.05}, {-0.3, 0.2}, {0.25, -0.4}, {-0.05, -0.15}, {0.45, 0.3}};
  for (const auto& q1 : cg.critical_points) {
    if (q1.multiplicity != p1.multiplicity) continue;
    for (const auto& q2 : cg.critical_points) {
      if (&q2 == &q1 || q2.multiplicity != p2.multiplicity) continue;
      const auto eps = two_point_map(p1.point, p2.point, q1.point, q2.point, 1e-6);
      if (!eps) continue;
      // eph is fixed by two sample values; use the best separated pair
      std::optional<DiskAutomorphism> eph;
      double best_sep = 0;
      for (std::size_t i = 0; i < std::size(samples); ++i)
        for (std::size_t j = i + 1; j < std::size(samples); ++j) {
          const Complex gi = g((*eps)(samples[i])), gj = g((*eps)(samples[j]));
          const double sep = pseudo_distance(gi, gj);
          if (sep <= best_sep) continue;
          auto cand = two_point_map(gi, gj, f(samples[i]), f(samples[j]), 1e-6);
          if (cand) {
            best_sep = sep;
            eph = cand;
          }
        }
      if (!eph) continue;
      const double dev = witness_deviation(f, g, *eps, *eph);
      if (dev > tol) continue;
      bool duplicate = false;
      for (const auto& w : out)
        duplicate = duplicate || (std::abs(w.eps.rotation() - eps->rotation()) < 1e-6 &&
                                  std::abs(w.eps.center() - eps->center()) < 1e-6);
      if (!duplicate) out.push_back({*eps, *eph, dev});
    }
  }
  return out;
}

double fbp_distance(const FBP& f, const FBP& g) {
  if (f.degree() != g.degree()) return std::numeric_limits<double>::infinity();
  return std::max(std::abs(f.rho() - g.rho()), matched_distance(f.zero_list(), g.zero_list()));
}

bool equals_fbp(const FBP& f, const FBP& g, double tol) { return fbp_distance(f, g) <= tol; }

double boundary_modulus_deviation(const FBP& f, int samples) {
  double dev = 0;
  for (int j = 0; j < samples; ++j) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * j / samples);
    dev = std::max(dev, std::abs(std::abs(f(z)) - 1.0));
  }
  return dev;
}

double reflection_deviation(const FBP& f, int samples) {
  double dev = 0;
  for (int j = 0; j < samples; ++j) {
    const double th = 2.0 * std::numbers::pi * (j + 0.37) / samples;
    for (const double r : {0.3, 0.8, 1.25}) {
      const Complex z = std::polar(r, th);
      const Complex refl = 1.0 / std::conj(z);
      const Complex fz = f(z);
      const Complex fr = f(refl);
      if (!std::isfinite(std::abs(fz)) || !std::isfinite(std::abs(fr)) || std::abs(fr) > 1e8 || std::abs(fz) > 1e8)
        continue;
      dev = std::max(dev, std::abs(fz * std::conj(fr) - 1.0) / std::max(1.0, std::abs(fz) * std::abs(fr)));
    }
  }
  return dev;
}

double sup_distance(const FBP& f, const FBP& g, int m, double r) {
  double dev = 0;
  for (int j = 0; j < m; ++j) {
    const Complex z = std::polar(r, 2.0 * std::numbers::pi * j / m);
    dev = std::max(dev, std::abs(f(z) - g(z)));
  }
  return dev;
}

}  // namespace bdyn
