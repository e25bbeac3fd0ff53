#pragma once

// Theta functions, elliptic moduli, Jacobi elliptic functions and the
// Weierstrass p-function for the lattice spanned by (1, tau).
//
// Everything here is templated on the real scalar; the library instantiates
// it with double.  Conventions follow DLMF chapters 20-23: the nome is
// q = exp(i*pi*tau), k = theta2^2/theta3^2 and K'/K = -i*tau.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "bdyn/errors.hpp"

namespace bdyn {

/// A point of the Riemann sphere: a finite complex value or infinity.
template <typename Real>
struct Extended {
  std::complex<Real> value{};
  bool infinite = false;

  Extended() = default;
  Extended(std::complex<Real> v) : value(v) {}  // NOLINT: implicit by intent
  static Extended at_infinity() {
    Extended e;
    e.infinite = true;
    return e;
  }
  bool finite() const { return !infinite; }
};

/// Chordal distance on the Riemann sphere, used to compare extended values.
template <typename Real>
Real chordal_distance(const Extended<Real>& a, const Extended<Real>& b) {
  if (a.infinite && b.infinite) return Real(0);
  if (a.infinite) return Real(2) / std::sqrt(Real(1) + std::norm(b.value));
  if (b.infinite) return Real(2) / std::sqrt(Real(1) + std::norm(a.value));
  return Real(2) * std::abs(a.value - b.value) /
         std::sqrt((Real(1) + std::norm(a.value)) * (Real(1) + std::norm(b.value)));
}

template <typename Real>
class ModularTau {
 public:
  explicit ModularTau(std::complex<Real> v) : value_(v) {
    if (!(v.imag() > Real(0)) || !std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("tau must lie in the upper half plane");
  }
  std::complex<Real> value() const { return value_; }
  std::complex<Real> nome() const {
    return std::exp(std::complex<Real>(0, std::numbers::pi_v<Real>) * value_);
  }
  ModularTau scaled(Real n) const { return ModularTau(value_ * n); }
  bool purely_imaginary() const { return value_.real() == Real(0); }

 private:
  std::complex<Real> value_;
};

template <typename Real>
struct EllipticModulusData {
  ModularTau<Real> tau;
  std::complex<Real> nome_q;
  std::complex<Real> modulus_k;
  std::complex<Real> comp_modulus_kp;
  std::complex<Real> quarter_K;
  std::complex<Real> quarter_Kp;
};

/// Real modulus bundle used by the Jacobi routines.  k and k' are kept
/// separately so that k close to 1 does not lose k' to cancellation.
template <typename Real>
struct RealModulus {
  Real k{};
  Real kp{1};
  Real K{std::numbers::pi_v<Real> / 2};
  Real Kp{std::numeric_limits<Real>::infinity()};

  static RealModulus from_k(Real k);
  static RealModulus from_pair(Real k, Real kp);
};

template <typename Real>
struct JacobiValues {
  std::complex<Real> sn, cn, dn;
  Extended<Real> cd;
  bool pole = false;  // u is congruent to i*K' (sn, cn, dn infinite)
};

template <typename Real>
struct WeierstrassData {
  ModularTau<Real> tau;
  std::array<std::complex<Real>, 3> e_values;  // p at 1/2, tau/2, (1+tau)/2
  std::complex<Real> g2;
  std::complex<Real> g3;
};

namespace detail {

template <typename Real>
constexpr Real series_cutoff() {
  return Real(1e-17);
}

template <typename Real>
constexpr Real cutoff_scale() {
  return Real(1e-17);
}

// Arithmetic-geometric mean; for complex arguments the "right" square root
// (|a_n - b_n| <= |a_n + b_n|) is taken at every step.
template <typename T>
T agm(T a, T b) {
  using std::abs;
  using std::sqrt;
  for (int i = 0; i < 80; ++i) {
    if (abs(a - b) <= 4 * std::numeric_limits<double>::epsilon() * abs(a)) break;
    T an = (a + b) / T(2);
    T bn = sqrt(a * b);
    if constexpr (!std::is_floating_point_v<T>) {
      if (abs(an - bn) > abs(an + bn)) bn = -bn;
    }
    a = an;
    b = bn;
  }
  return a;
}

// Theta constants theta2, theta3, theta4 at nome exp(i pi tau).
template <typename Real>
std::array<std::complex<Real>, 3> theta_nulls(std::complex<Real> tau) {
  using C = std::complex<Real>;
  const C ipt = C(0, std::numbers::pi_v<Real>) * tau;
  const Real absq = std::exp(-std::numbers::pi_v<Real> * tau.imag());
  if (absq >= Real(1) - Real(1e-9))
    throw DomainError("theta series does not converge for |q| >= 1");
  C s2(0), s3(0), s4(0);
  for (int n = 0;; ++n) {
    // q^{n(n+1)} for theta2, q^{n^2} for theta3/theta4
    const C t2 = std::exp(ipt * Real(n) * Real(n + 1));
    s2 += t2;
    if (n > 0) {
      const C t3 = std::exp(ipt * Real(n) * Real(n));
      s3 += t3;
      s4 += (n % 2 ? -t3 : t3);
    }
    if (std::pow(absq, Real(n) * Real(n)) < series_cutoff<Real>() && n > 0) break;
    if (n > 100000) throw NumericalError("theta series failed to converge");
  }
  const C quarter = std::exp(ipt / Real(4));
  return {Real(2) * quarter * s2, Real(1) + Real(2) * s3, Real(1) + Real(2) * s4};
}

// Jacobi theta functions theta1..theta4 with argument v (DLMF 20.2).
template <typename Real>
std::array<std::complex<Real>, 4> theta_functions(std::complex<Real> v, std::complex<Real> tau) {
  using C = std::complex<Real>;
  const C ipt = C(0, std::numbers::pi_v<Real>) * tau;
  const Real absq = std::exp(-std::numbers::pi_v<Real> * tau.imag());
  if (absq >= Real(1) - Real(1e-9)) throw DomainError("theta series does not converge");
  C t1(0), t2(0), t3(1), t4(1);
  const Real growth = std::abs(v.imag());
  for (int n = 0; n < 100000; ++n) {
    const Real h = Real(n) + Real(0.5);
    const C qh = std::exp(ipt * h * h);
    const Real sgn = (n % 2) ? Real(-1) : Real(1);
    t1 += Real(2) * sgn * qh * std::sin(Real(2 * n + 1) * v);
    t2 += Real(2) * qh * std::cos(Real(2 * n + 1) * v);
    Real mag = std::abs(qh) * std::exp(Real(2 * n + 1) * growth);
    if (n > 0) {
      const C qn = std::exp(ipt * Real(n) * Real(n));
      const C c = std::cos(Real(2 * n) * v);
      t3 += Real(2) * qn * c;
      t4 += Real(2) * sgn * qn * c;
      mag = std::max(mag, std::abs(qn) * std::exp(Real(2 * n) * growth));
    }
    const Real scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4), Real(1e-300)});
    if (n > 1 && mag < series_cutoff<Real>() * scale) return {t1, t2, t3, t4};
  }
  throw NumericalError("theta function series failed to converge");
}

// Carlson's symmetric integral R_F for complex arguments by duplication.
template <typename Real>
std::complex<Real> carlson_rf(std::complex<Real> x, std::complex<Real> y, std::complex<Real> z) {
  using C = std::complex<Real>;
  const Real tol = std::pow(Real(3) * std::numeric_limits<Real>::epsilon() * Real(0.01), Real(1) / 8);
  C a0 = (x + y + z) / Real(3);
  C an = a0;
  Real q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) / tol;
  Real mul = 1;
  for (int i = 0; i < 60 && q >= mul * std::abs(an); ++i) {
    const C sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const C lam = sx * sy + sy * sz + sz * sx;
    an = (an + lam) / Real(4);
    x = (x + lam) / Real(4);
    y = (y + lam) / Real(4);
    z = (z + lam) / Real(4);
    mul *= 4;
  }
  const C X = (a0 - x) / (mul * an);
  const C Y = (a0 - y) / (mul * an);
  const C Z = -(X + Y);
  const C e2 = X * Y - Z * Z;
  const C e3 = X * Y * Z;
  return (e3 * (Real(6930) * e3 + e2 * (Real(15015) * e2 - Real(16380)) + Real(17160)) +
          e2 * ((Real(10010) - Real(5775) * e2) * e2 - Real(24024)) + Real(240240)) /
         (Real(240240) * std::sqrt(an));
}

// sn, cn, dn for real argument from the complementary parameter mc = k'^2,
// by the descending Landen (Gauss) transformation.
template <typename Real>
std::array<Real, 3> sncndn_real(Real x, Real mc) {
  if (mc == Real(0)) {
    const Real sech = Real(1) / std::cosh(x);
    return {std::tanh(x), sech, sech};
  }
  constexpr int kMaxLevels = 16;
  const Real tol = std::sqrt(std::numeric_limits<Real>::epsilon() * Real(0.01));
  std::array<Real, kMaxLevels> am{}, bm{};
  int levels = 0;
  Real a = 1;
  Real c = 0;
  for (; levels < kMaxLevels; ++levels) {
    am[levels] = a;
    bm[levels] = mc = std::sqrt(mc);
    c = (a + mc) / 2;
    if (!(std::abs(a - mc) > tol * a)) {
      ++levels;
      break;
    }
    mc *= a;
    a = c;
  }
  x *= c;
  Real sn = std::sin(x), cn = std::cos(x), dn = 1;
  if (sn != Real(0)) {
    Real r = cn / sn;
    c *= r;
    while (levels--) {
      const Real b = am[levels];
      r *= c;
      c *= dn;
      dn = (bm[levels] + r) / (b + r);
      r = c / b;
    }
    r = Real(1) / std::sqrt(c * c + 1);
    sn = sn < 0 ? -r : r;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

// Pieces of the addition formula at u = x + iy (A&S 16.21).
template <typename Real>
struct AdditionTerms {
  Real s, c, d;     // modulus k at x
  Real s1, c1, d1;  // modulus k' at y
};

template <typename Real>
AdditionTerms<Real> addition_terms(std::complex<Real> u, const RealModulus<Real>& m) {
  const auto [s, c, d] = sncndn_real(u.real(), m.kp * m.kp);
  const auto [s1, c1, d1] = sncndn_real(u.imag(), m.k * m.k);
  return {s, c, d, s1, c1, d1};
}

// cd and its derivative on the strip |Im u| <= K'/2 where dn has no zeros.
template <typename Real>
std::pair<std::complex<Real>, std::complex<Real>> cd_strip(std::complex<Real> u, const RealModulus<Real>& m) {
  using C = std::complex<Real>;
  const auto t = addition_terms(u, m);
  const Real k2 = m.k * m.k;
  const C num_cn(t.c * t.c1, -t.s * t.d * t.s1 * t.d1);
  const C num_dn(t.d * t.c1 * t.d1, -k2 * t.s * t.c * t.s1);
  const C num_sn(t.s * t.d1, t.c * t.d * t.s1 * t.c1);
  const Real delta = t.c1 * t.c1 + k2 * t.s * t.s * t.s1 * t.s1;
  const C cdv = num_cn / num_dn;
  // cd' = -k'^2 sn / dn^2
  const C deriv = -(m.kp * m.kp) * num_sn * delta / (num_dn * num_dn);
  return {cdv, deriv};
}

template <typename Real>
Real reduce_mod(Real x, Real period) {
  return x - period * std::round(x / period);
}

}  // namespace detail

template <typename Real>
RealModulus<Real> RealModulus<Real>::from_pair(Real k, Real kp) {
  if (!(k >= Real(0)) || !(kp > Real(0)) || k >= Real(1))
    throw DomainError("real modulus must satisfy 0 <= k < 1");
  RealModulus m;
  m.k = k;
  m.kp = kp;
  m.K = std::numbers::pi_v<Real> / (Real(2) * detail::agm(Real(1), kp));
  m.Kp = k > Real(0) ? std::numbers::pi_v<Real> / (Real(2) * detail::agm(Real(1), k))
                     : std::numeric_limits<Real>::infinity();
  return m;
}

template <typename Real>
RealModulus<Real> RealModulus<Real>::from_k(Real k) {
  if (!(k >= Real(0)) || k >= Real(1)) throw DomainError("real modulus must satisfy 0 <= k < 1");
  return from_pair(k, std::sqrt((Real(1) - k) * (Real(1) + k)));
}

/// k, k', K, K' and the nome for tau.  Purely imaginary tau with Im tau < 1
/// goes through tau -> -1/tau so that k near 1 keeps its complement exactly.
template <typename Real>
EllipticModulusData<Real> modulus_data(const ModularTau<Real>& tau) {
  using C = std::complex<Real>;
  C k, kp;
  if (tau.purely_imaginary() && tau.value().imag() < Real(1)) {
    const C dual = C(0, Real(1) / tau.value().imag());
    const auto th = detail::theta_nulls<Real>(dual);
    k = th[2] * th[2] / (th[1] * th[1]);
    kp = th[0] * th[0] / (th[1] * th[1]);
  } else {
    const auto th = detail::theta_nulls<Real>(tau.value());
    k = th[0] * th[0] / (th[1] * th[1]);
    kp = th[2] * th[2] / (th[1] * th[1]);
  }
  C K, Kp;
  if (tau.purely_imaginary()) {
    // real quantities; keep them real to the last bit
    k = C(k.real(), 0);
    kp = C(kp.real(), 0);
    K = std::numbers::pi_v<Real> / (Real(2) * detail::agm(Real(1), kp.real()));
    Kp = k.real() > 0 ? std::numbers::pi_v<Real> / (Real(2) * detail::agm(Real(1), k.real()))
                      : std::numeric_limits<Real>::infinity();
  } else {
    K = std::numbers::pi_v<Real> / (Real(2) * detail::agm(C(1), kp));
    Kp = std::numbers::pi_v<Real> / (Real(2) * detail::agm(C(1), k));
  }
  return {tau, tau.nome(), k, kp, K, Kp};
}

template <typename Real>
RealModulus<Real> real_modulus(const EllipticModulusData<Real>& md) {
  if (!md.tau.purely_imaginary()) throw DomainError("real modulus requires purely imaginary tau");
  RealModulus<Real> m;
  m.k = md.modulus_k.real();
  m.kp = md.comp_modulus_kp.real();
  m.K = md.quarter_K.real();
  m.Kp = md.quarter_Kp.real();
  if (!(m.k < Real(1)) || !(m.kp > Real(0)))
    throw DomainError("modulus is numerically 1; tau too close to the real axis");
  return m;
}

/// gamma(t) = sqrt(k(4ti/pi)).
template <typename Real>
Real gamma_of_t(Real t) {
  if (!(t > Real(0)) || !std::isfinite(t)) throw DomainError("gamma(t) requires t > 0");
  const ModularTau<Real> tau(std::complex<Real>(0, Real(4) * t / std::numbers::pi_v<Real>));
  return std::sqrt(modulus_data(tau).modulus_k.real());
}

/// 1 - gamma(t), accurate where gamma(t) rounds to 1.
template <typename Real>
Real gamma_complement(Real t) {
  if (!(t > Real(0)) || !std::isfinite(t)) throw DomainError("gamma(t) requires t > 0");
  const ModularTau<Real> tau(std::complex<Real>(0, Real(4) * t / std::numbers::pi_v<Real>));
  const auto md = modulus_data(tau);
  const Real k = md.modulus_k.real();
  const Real kp = md.comp_modulus_kp.real();
  const Real one_minus_k = kp * kp / (Real(1) + k);
  return one_minus_k / (Real(1) + std::sqrt(k));
}

/// cd(u; k) with derivative, on the whole plane.  Poles (u = K + iK' mod
/// periods) come back as infinity with a zero derivative placeholder.
template <typename Real>
std::pair<Extended<Real>, std::complex<Real>> cd_with_derivative(std::complex<Real> u, const RealModulus<Real>& m) {
  using C = std::complex<Real>;
  if (m.k == Real(0)) return {Extended<Real>(std::cos(u)), -std::sin(u)};
  Real x = detail::reduce_mod(u.real(), Real(4) * m.K);
  Real y = detail::reduce_mod(u.imag(), Real(2) * m.Kp);
  if (std::abs(y) <= m.Kp / 2) {
    const auto [v, d] = detail::cd_strip(C(x, y), m);
    return {Extended<Real>(v), d};
  }
  // cd(v + iK') = 1/(k cd(v))
  const Real shift = y > 0 ? m.Kp : -m.Kp;
  const auto [w, dw] = detail::cd_strip(C(x, y - shift), m);
  if (std::abs(w) < Real(1e-300)) return {Extended<Real>::at_infinity(), C(0)};
  return {Extended<Real>(Real(1) / (m.k * w)), -dw / (m.k * w * w)};
}

template <typename Real>
Extended<Real> cd(std::complex<Real> u, const RealModulus<Real>& m) {
  return cd_with_derivative(u, m).first;
}

/// sn, cn, dn and cd at complex argument for a real modulus.
template <typename Real>
JacobiValues<Real> jacobi_functions(std::complex<Real> u, const RealModulus<Real>& m) {
  using C = std::complex<Real>;
  JacobiValues<Real> out;
  out.cd = cd(u, m);
  if (m.k == Real(0)) {
    out.sn = std::sin(u);
    out.cn = std::cos(u);
    out.dn = C(1);
    return out;
  }
  const auto t = detail::addition_terms(u, m);
  const Real k2 = m.k * m.k;
  const Real delta = t.c1 * t.c1 + k2 * t.s * t.s * t.s1 * t.s1;
  if (delta < Real(1e-300)) {
    const Real nan = std::numeric_limits<Real>::quiet_NaN();
    out.sn = out.cn = out.dn = C(nan, nan);
    out.pole = true;
    return out;
  }
  out.sn = C(t.s * t.d1, t.c * t.d * t.s1 * t.c1) / delta;
  out.cn = C(t.c * t.c1, -t.s * t.d * t.s1 * t.d1) / delta;
  out.dn = C(t.d * t.c1 * t.d1, -k2 * t.s * t.c * t.s1) / delta;
  return out;
}

template <typename Real>
JacobiValues<Real> jacobi_functions(std::complex<Real> u, Real k) {
  return jacobi_functions(u, RealModulus<Real>::from_k(k));
}

/// Complex modulus: theta quotients at the tau recovered from K'/K.  The
/// AGM branch choice limits this to moderate Im k; a branch mismatch is
/// reported instead of returning wrong values.
template <typename Real>
JacobiValues<Real> jacobi_functions(std::complex<Real> u, std::complex<Real> k) {
  using C = std::complex<Real>;
  const C kp = std::sqrt((C(1) - k) * (C(1) + k));
  const C K = std::numbers::pi_v<Real> / (Real(2) * detail::agm(C(1), kp));
  const C Kp = std::numbers::pi_v<Real> / (Real(2) * detail::agm(C(1), k));
  const C tau = C(0, 1) * Kp / K;
  if (!(tau.imag() > Real(0))) throw NumericalError("complex modulus: recovered tau not in upper half plane");
  const auto nul = detail::theta_nulls<Real>(tau);
  const C k_check = nul[0] * nul[0] / (nul[1] * nul[1]);
  if (std::abs(k_check - k) > Real(1e-8) * std::max(Real(1), std::abs(k)))
    throw NumericalError("complex modulus: theta/AGM branch mismatch");
  const C zeta = u / (nul[1] * nul[1]);
  const auto th = detail::theta_functions<Real>(zeta, tau);
  JacobiValues<Real> out;
  if (std::abs(th[3]) < Real(1e-300)) {
    // sn, cn, dn all blow up; cd tends to 1/k
    out.pole = true;
    out.cd = Extended<Real>(C(1) / k);
    return out;
  }
  out.sn = nul[1] / nul[0] * th[0] / th[3];
  out.cn = nul[2] / nul[0] * th[1] / th[3];
  out.dn = nul[2] / nul[1] * th[2] / th[3];
  if (std::abs(out.dn) < Real(1e-300))
    out.cd = Extended<Real>::at_infinity();
  else
    out.cd = Extended<Real>(out.cn / out.dn);
  return out;
}

/// Some u with cd(u; k) = x.  The Carlson integral gives the seed, Newton
/// polishes, and a grid over one period cell backs both up.
template <typename Real>
std::complex<Real> inverse_cd(const Extended<Real>& x, const RealModulus<Real>& m) {
  using C = std::complex<Real>;
  if (x.infinite) return C(m.K, m.Kp);
  const C target = x.value;
  const Real tol = Real(1e-12) * std::max(Real(1), std::abs(target));

  auto newton = [&](C u, Real& residual) {
    for (int it = 0; it < 80; ++it) {
      const auto [v, d] = cd_with_derivative(u, m);
      if (v.infinite) {
        residual = std::numeric_limits<Real>::infinity();
        return u;
      }
      const C r = v.value - target;
      residual = std::abs(r);
      if (residual <= tol) return u;
      if (std::abs(d) < Real(1e-300)) return u;
      C step = r / d;
      // keep steps inside one period cell
      const Real cap = std::min(m.K, std::isfinite(m.Kp) ? m.Kp : m.K);
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      u -= step;
    }
    return u;
  };

  Real residual = std::numeric_limits<Real>::infinity();
  Real best_residual = residual;
  C best;
  {
    // cd(u) = sn(K - u),  sn^{-1}(y) = y R_F(1 - y^2, 1 - k^2 y^2, 1)
    const C y = target;
    const C seed = C(m.K) - y * detail::carlson_rf<Real>(C(1) - y * y, C(1) - m.k * m.k * y * y, C(1));
    if (std::isfinite(seed.real()) && std::isfinite(seed.imag())) {
      best = newton(seed, residual);
      best_residual = residual;
      if (residual <= tol) return best;
    }
  }
  if (m.k == Real(0) || !std::isfinite(m.Kp)) {
    if (best_residual <= Real(1e-10) * std::max(Real(1), std::abs(target))) return best;
    throw NumericalError("inverse_cd: Newton failed for degenerate modulus");
  }
  // grid seeds over [0, 2K] x [-K', K']
  constexpr int kGrid = 12;
  std::vector<std::pair<Real, C>> seeds;
  for (int a = 0; a <= kGrid; ++a)
    for (int b = 0; b <= kGrid; ++b) {
      const C u(Real(2) * m.K * a / kGrid, m.Kp * (Real(2) * b / kGrid - Real(1)));
      const auto v = cd(u, m);
      if (v.infinite) continue;
      seeds.emplace_back(std::abs(v.value - target), u);
    }
  std::sort(seeds.begin(), seeds.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  for (std::size_t i = 0; i < std::min<std::size_t>(seeds.size(), 8); ++i) {
    const C u = newton(seeds[i].second, residual);
    if (residual < best_residual) {
      best_residual = residual;
      best = u;
    }
    if (residual <= tol) return u;
  }
  if (best_residual <= Real(1e-10) * std::max(Real(1), std::abs(target))) return best;
  std::ostringstream msg;
  msg << "inverse_cd: Newton did not converge for x = " << target << " (k = " << m.k
      << ", best residual " << best_residual << ")";
  throw NumericalError(msg.str());
}

namespace detail {

// pi^2 / sin^2(pi w) and its derivative, overflow-safe away from the real axis.
template <typename Real>
std::pair<std::complex<Real>, std::complex<Real>> csc2_term(std::complex<Real> w) {
  using C = std::complex<Real>;
  constexpr Real pi = std::numbers::pi_v<Real>;
  if (std::abs(w.imag()) < Real(1)) {
    const C s = std::sin(pi * w);
    const C c = std::cos(pi * w);
    return {pi * pi / (s * s), Real(-2) * pi * pi * pi * c / (s * s * s)};
  }
  const Real sgn = w.imag() > 0 ? Real(1) : Real(-1);
  const C x = std::exp(C(0, Real(2) * pi * sgn) * w);
  const C om = C(1) - x;
  const C val = pi * pi * (Real(-4) * x / (om * om));
  const C der = C(0, Real(-8) * pi * pi * pi * sgn) * x * (C(1) + x) / (om * om * om);
  return {val, der};
}

// tau' = (a tau + b)/(c tau + d) in the standard fundamental domain; returns
// tau' and gamma = c tau + d, so that Lambda(1, tau) = gamma * Lambda(1, tau').
template <typename Real>
std::pair<std::complex<Real>, std::complex<Real>> reduce_tau(std::complex<Real> tau) {
  using C = std::complex<Real>;
  long long a = 1, b = 0, c = 0, d = 1;
  C t = tau;
  for (int it = 0; it < 200; ++it) {
    const long long n = std::llround(t.real());
    t -= Real(n);
    a -= n * c;
    b -= n * d;
    if (std::norm(t) < Real(1) - Real(1e-14)) {
      t = Real(-1) / t;
      const long long na = -c, nb = -d, nc = a, nd = b;
      a = na;
      b = nb;
      c = nc;
      d = nd;
    } else {
      break;
    }
  }
  return {t, Real(c) * tau + Real(d)};
}

// p and p' for the lattice (1, tau) with tau already reduced; z is reduced
// into the cell around the origin first.
template <typename Real>
std::pair<Extended<Real>, std::complex<Real>> wp_reduced(std::complex<Real> z, std::complex<Real> tau,
                                                         Real pole_radius) {
  using C = std::complex<Real>;
  const Real n = std::round(z.imag() / tau.imag());
  z -= n * tau;
  z -= std::round(z.real());
  Real nearest = std::abs(z);
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) nearest = std::min(nearest, std::abs(z - Real(a) - Real(b) * tau));
  if (nearest < pole_radius) return {Extended<Real>::at_infinity(), C(0)};

  auto [sum, dsum] = csc2_term(z);
  for (int row = 1; row < 10000; ++row) {
    const auto [p1, d1] = csc2_term(z + Real(row) * tau);
    const auto [p2, d2] = csc2_term(z - Real(row) * tau);
    sum += p1 + p2;
    dsum += d1 + d2;
    const Real mag = std::abs(p1) + std::abs(p2);
    if (mag < cutoff_scale<Real>() * std::max(Real(1), std::abs(sum)) &&
        std::abs(d1) + std::abs(d2) < cutoff_scale<Real>() * std::max(Real(1), std::abs(dsum)))
      break;
  }
  constexpr Real pi = std::numbers::pi_v<Real>;
  C g2 = C(pi * pi / Real(3));
  for (int row = 1; row < 10000; ++row) {
    const C term = Real(2) * csc2_term(Real(row) * tau).first;
    g2 += term;
    if (std::abs(term) < cutoff_scale<Real>() * std::abs(g2)) break;
  }
  return {Extended<Real>(sum - g2), dsum};
}

}  // namespace detail

/// p(z) for the lattice spanned by 1 and tau, with its derivative.  Points
/// within pole_radius of a lattice point come back as infinity.
template <typename Real>
std::pair<Extended<Real>, std::complex<Real>> weierstrass_p_with_derivative(std::complex<Real> z,
                                                                           const ModularTau<Real>& tau,
                                                                           Real pole_radius = Real(1e-8)) {
  const auto [tr, g] = detail::reduce_tau(tau.value());
  // Lambda(1,tau) = g * Lambda(1,tr), so p(z) = g^-2 p(z/g; tr)
  const auto [v, d] = detail::wp_reduced(z / g, tr, pole_radius / std::abs(g));
  if (v.infinite) return {v, d};
  return {Extended<Real>(v.value / (g * g)), d / (g * g * g)};
}

template <typename Real>
Extended<Real> weierstrass_p(std::complex<Real> z, const ModularTau<Real>& tau) {
  return weierstrass_p_with_derivative(z, tau).first;
}

template <typename Real>
WeierstrassData<Real> weierstrass_data(const ModularTau<Real>& tau) {
  using C = std::complex<Real>;
  const C t = tau.value();
  const std::array<C, 3> halves{C(0.5), t / Real(2), (C(1) + t) / Real(2)};
  std::array<C, 3> e;
  for (int i = 0; i < 3; ++i) e[i] = weierstrass_p(halves[i], tau).value;
  const C g2 = Real(-4) * (e[0] * e[1] + e[1] * e[2] + e[0] * e[2]);
  const C g3 = Real(4) * e[0] * e[1] * e[2];
  return {tau, e, g2, g3};
}

/// Some z with p(z) = x.  Seeded by the Carlson integral
/// z = R_F(x - e1, x - e2, x - e3), polished by Newton, grid fallback.
template <typename Real>
std::complex<Real> inverse_p(const Extended<Real>& x, const ModularTau<Real>& tau) {
  using C = std::complex<Real>;
  if (x.infinite) return C(0);
  const C target = x.value;
  const auto wd = weierstrass_data(tau);
  const C t = tau.value();
  const Real tol = Real(1e-12) * std::max(Real(1), std::abs(target));

  auto newton = [&](C z, Real& residual) {
    for (int it = 0; it < 60; ++it) {
      const auto [v, d] = weierstrass_p_with_derivative(z, tau);
      if (v.infinite) {
        residual = std::numeric_limits<Real>::infinity();
        return z;
      }
      const C r = v.value - target;
      residual = std::abs(r);
      if (residual <= tol || std::abs(d) < Real(1e-300)) return z;
      C step = r / d;
      const Real cap = Real(0.25) * std::min(Real(1), t.imag());
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      z -= step;
    }
    return z;
  };

  Real residual = std::numeric_limits<Real>::infinity();
  Real best_residual = residual;
  C best(0.25, 0.25);
  const C seed = detail::carlson_rf<Real>(target - wd.e_values[0], target - wd.e_values[1], target - wd.e_values[2]);
  if (std::isfinite(seed.real()) && std::isfinite(seed.imag())) {
    best = newton(seed, residual);
    best_residual = residual;
    if (residual <= tol) return best;
  }
  constexpr int kGrid = 16;
  std::vector<std::pair<Real, C>> seeds;
  for (int a = 0; a < kGrid; ++a)
    for (int b = 0; b < kGrid; ++b) {
      const C z = (Real(a) + Real(0.5)) / Real(kGrid) + (Real(b) + Real(0.5)) / Real(kGrid) * t;
      const auto v = weierstrass_p(z, tau);
      if (v.infinite) continue;
      seeds.emplace_back(std::abs(v.value - target), z);
    }
  std::sort(seeds.begin(), seeds.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  for (std::size_t i = 0; i < std::min<std::size_t>(seeds.size(), 10); ++i) {
    const C z = newton(seeds[i].second, residual);
    if (residual < best_residual) {
      best_residual = residual;
      best = z;
    }
    if (residual <= tol) return z;
  }
  if (best_residual <= Real(1e-10) * std::max(Real(1), std::abs(target))) return best;
  std::ostringstream msg;
  msg << "inverse_p: Newton did not converge for x = " << target << " (best residual " << best_residual << ")";
  throw NumericalError(msg.str());
}

}  // namespace bdyn
