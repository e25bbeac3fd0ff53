#include "bdyn/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "bdyn/cheby.hpp"
#include "bdyn/elliptic.hpp"
#include "bdyn/errors.hpp"

namespace bdyn {

namespace {

int smallest_prime_factor(int n) {
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

// Unimodular constant making rho * prod B_a(z0) equal to value.
Complex rho_at(const std::vector<Complex>& zeros, Complex z0, Complex value) {
  Complex prod(1);
  for (const Complex a : zeros) prod *= (z0 - a) / (1.0 - std::conj(a) * z0);
  const Complex rho = value / prod;
  return rho / std::abs(rho);
}

std::optional<Decomposition> totally_ramified_split(const FBP& f) {
  const auto form = totally_ramified_normal_form(f);
  if (!form) return std::nullopt;
  const int n = f.degree();
  const int p = smallest_prime_factor(n);
  Decomposition d;
  d.recognizer = "totally_ramified";
  const FBP outer = compose(form->outer.to_fbp(), power_map(p));
  const FBP inner(Complex(1), Eigen::VectorXcd::Constant(n / p, form->p));
  d.factors = std::make_pair(outer, inner);
  d.deviation = fbp_distance(compose(outer, inner), f);
  return d;
}

// t with gamma(n t) = g, by bisection in log(n t).
double invert_gamma(double g, double complement) {
  double lo = std::log(1e-3), hi = std::log(1e3);
  const bool use_complement = g > 0.999;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double s = std::exp(mid);
    // gamma decreases in s
    const bool too_big = use_complement ? gamma_complement(s) < complement : gamma_of_t(s) > g;
    (too_big ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

std::optional<Decomposition> chebyshev_split(const FBP& f) {
  const int n = f.degree();
  const auto crit = critical_data(f);
  if (crit.critical_values.size() != 2 || static_cast<int>(crit.critical_points.size()) != n - 1) return std::nullopt;
  const double delta = pseudo_distance(crit.critical_values[0], crit.critical_values[1]);
  if (!(delta > 0) || delta >= 1) return std::nullopt;
  const double root = std::sqrt((1 - delta) * (1 + delta));
  const double g = (1 - root) / delta;
  const double s = invert_gamma(g, (delta - 1 + root) / delta);
  const double t = s / n;
  const auto model = cheby_blaschke(n, t);
  const auto witnesses = associated(f, model.product);
  if (witnesses.empty()) return std::nullopt;
  const auto& w = witnesses.front();
  const int p = smallest_prime_factor(n);
  const FBP outer = compose(w.eph.to_fbp(), cheby_blaschke(p, (n / p) * t).product);
  const FBP inner = compose(cheby_blaschke(n / p, t).product, w.eps.to_fbp());
  Decomposition d;
  d.recognizer = "chebyshev";
  d.chebyshev_t = t;
  d.factors = std::make_pair(outer, inner);
  d.deviation = fbp_distance(compose(outer, inner), f);
  return d;
}

std::optional<Decomposition> rotational_split(const FBP& f) {
  const int n = f.degree();
  std::vector<Complex> centers{Complex(0)};
  for (const auto& c : critical_data(f).critical_points)
    if (std::abs(c.point) > 1e-9) centers.push_back(c.point);

  std::optional<Decomposition> symmetric_only;
  for (const Complex c : centers) {
    std::vector<Complex> zs;
    for (const Complex a : f.zero_list()) zs.push_back(DiskAutomorphism::iota(-c)(a));
    int r0 = 0;
    std::vector<Complex> nonzero;
    for (const Complex z : zs) {
      if (std::abs(z) < 1e-9) ++r0;
      else nonzero.push_back(z);
    }
    int sym = 0;
    for (int k = n; k >= 2; --k) {
      if (nonzero.size() % static_cast<std::size_t>(k) != 0) continue;
      const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / k);
      std::vector<Complex> rotated;
      for (const Complex z : nonzero) rotated.push_back(w * z);
      if (matched_distance(nonzero, rotated) > 1e-8) continue;
      if (sym == 0) sym = k;
      if (r0 % k != 0) continue;
      // f o iota_c = G(z^k); collect the k-th powers of each orbit once
      std::vector<Complex> g_zeros(static_cast<std::size_t>(r0 / k), Complex(0));
      std::vector<char> used(nonzero.size(), 0);
      for (std::size_t i = 0; i < nonzero.size(); ++i) {
        if (used[i]) continue;
        const Complex v = std::pow(nonzero[i], k);
        Complex sum(0);
        int taken = 0;
        for (std::size_t j = i; j < nonzero.size() && taken < k; ++j)
          if (!used[j] && std::abs(std::pow(nonzero[j], k) - v) < 1e-6) {
            used[j] = 1;
            sum += std::pow(nonzero[j], k);
            ++taken;
          }
        if (taken != k) break;
        g_zeros.push_back(sum / static_cast<double>(k));
      }
      if (static_cast<int>(g_zeros.size()) * k != n) continue;
      const Complex z0 = std::polar(0.7, 0.3);
      const Complex rho = rho_at(g_zeros, std::pow(z0, k), f(DiskAutomorphism::iota(c)(z0)));
      const FBP outer = make_fbp(rho, g_zeros);
      const FBP inner(Complex(1), Eigen::VectorXcd::Constant(k, c));
      Decomposition d;
      d.recognizer = "rotational";
      d.symmetry_k = k;
      d.symmetry_r = r0;
      d.symmetry_center = c;
      d.factors = std::make_pair(outer, inner);
      d.deviation = fbp_distance(compose(outer, inner), f);
      if (d.deviation <= identity_tolerance(n)) return d;
    }
    if (sym > 0 && !symmetric_only) {
      Decomposition d;
      d.recognizer = "rotational";
      d.symmetry_k = sym;
      d.symmetry_r = r0;
      d.symmetry_center = c;
      symmetric_only = d;
    }
  }
  return symmetric_only;
}

}  // namespace

DegreeLattice factor_degree_lattice(const FBP& f, const MonodromyOptions& options) {
  DegreeLattice out;
  const int n = f.degree();
  out.degrees = {1, n};
  if (n < 2) return out;
  out.monodromy = numerical_monodromy(f, options);
  for (const auto& sys : block_systems(out.monodromy)) out.degrees.insert(sys.block_size());
  for (const auto& p : out.monodromy.loops)
    out.has_full_cycle = out.has_full_cycle || p.cycle_type() == std::vector<int>{n};
  if (out.has_full_cycle) {
    for (const int a : out.degrees)
      for (const int b : out.degrees)
        out.lattice_closed = out.lattice_closed && out.degrees.count(std::gcd(a, b)) && out.degrees.count(std::lcm(a, b));
  }
  return out;
}

std::optional<Decomposition> decompose_recognized(const FBP& f) {
  const int n = f.degree();
  if (n < 4 || smallest_prime_factor(n) == n) return std::nullopt;
  const double tol = identity_tolerance(n);
  std::optional<Decomposition> symmetric_only;
  for (auto recognizer : {totally_ramified_split, chebyshev_split, rotational_split}) {
    auto d = recognizer(f);
    if (!d) continue;
    if (d->factors && d->deviation <= tol) return d;
    if (!d->factors && !symmetric_only) symmetric_only = d;
  }
  std::vector<int> sizes;
  try {
    for (const int d : factor_degree_lattice(f).degrees)
      if (d > 1 && d < n) sizes.push_back(d);
  } catch (const NumericalError&) {
    // monodromy unavailable; report what the recognizers found
  }
  if (symmetric_only) {
    symmetric_only->block_sizes = sizes;
    return symmetric_only;
  }
  if (sizes.empty()) return std::nullopt;
  Decomposition d;
  d.recognizer = "degrees_only";
  d.block_sizes = sizes;
  return d;
}

RittMove ritt_move_power(int k, int r, const FBP& g) {
  if (k < 1 || r < 0) throw DomainError("ritt_move_power needs k >= 1 and r >= 0");
  if (std::gcd(k, r) != 1) {
    std::ostringstream msg;
    msg << "ritt_move_power requires gcd(k, r) = 1, got gcd(" << k << ", " << r << ") = " << std::gcd(k, r);
    throw DomainError(msg.str());
  }
  // z^r g(z)^k
  std::vector<Complex> outer_zeros(static_cast<std::size_t>(r), Complex(0));
  for (int j = 0; j < k; ++j)
    for (const Complex a : g.zero_list()) outer_zeros.push_back(a);
  const FBP outer = make_fbp(std::pow(g.rho(), k), outer_zeros);
  // z^r g(z^k): zeros 0 (r times) and the k-th roots of the zeros of g
  std::vector<Complex> inner_zeros(static_cast<std::size_t>(r), Complex(0));
  for (const Complex a : g.zero_list()) {
    const double mod = std::pow(std::abs(a), 1.0 / k);
    const double arg = std::arg(a) / k;
    for (int j = 0; j < k; ++j) inner_zeros.push_back(std::polar(mod, arg + 2.0 * std::numbers::pi * j / k));
  }
  const FBP inner = make_fbp(g.rho(), inner_zeros);
  RittMove move{compose(outer, power_map(k)), compose(power_map(k), inner), 0, false};
  move.deviation = fbp_distance(move.lhs, move.rhs);
  move.equal = move.deviation <= 1e-8;
  return move;
}

RittMove ritt_move_cheby(int p, int q, double t) {
  if (p < 2 || q < 2) throw DomainError("ritt_move_cheby needs p, q >= 2");
  RittMove move{compose(cheby_blaschke(p, q * t).product, cheby_blaschke(q, t).product),
                compose(cheby_blaschke(q, p * t).product, cheby_blaschke(p, t).product), 0, false};
  move.deviation = fbp_distance(move.lhs, move.rhs);
  move.equal = move.deviation <= 1e-8;
  return move;
}

long long presentation_length(const std::vector<int>& degrees, int index) {
  if (index < 1 || index > static_cast<int>(degrees.size())) throw DomainError("presentation index out of range");
  long long h = 1;
  for (int i = 0; i + 1 < index; ++i) h *= degrees[static_cast<std::size_t>(i)];
  return h;
}

long long presentation_length(const std::vector<FBP>& factors, int index) {
  std::vector<int> degrees;
  for (const auto& f : factors) degrees.push_back(f.degree());
  return presentation_length(degrees, index);
}

int zieve_muller_bound(int n) {
  if (n < 2) throw DomainError("zieve_muller_bound needs n >= 2");
  const double v = std::max(8.0, 2.0 + 2.0 * std::log2(static_cast<double>(n)));
  return static_cast<int>(std::floor(v + 1e-12));
}

CommonIteration common_iteration(const FBP& f, const FBP& g, int max_exponent, int degree_cap) {
  if (f.degree() < 2 || g.degree() < 2) throw DomainError("common_iteration needs degrees >= 2");
  CommonIteration out;
  const double df = f.degree(), dg = g.degree();
  for (int k = 1; k <= max_exponent; ++k) {
    const double deg = std::pow(df, k);
    const int l = static_cast<int>(std::lround(std::log(deg) / std::log(dg)));
    if (l < 1 || std::pow(dg, l) != deg) continue;
    if (deg > degree_cap) {
      out.partial = true;
      continue;
    }
    if (equals_fbp(iterate(f, k, degree_cap), iterate(g, l, degree_cap), identity_tolerance(static_cast<int>(deg)))) {
      out.exponents = std::make_pair(k, l);
      return out;
    }
  }
  return out;
}

namespace {

void require(bool ok, const std::string& condition) {
  if (!ok) throw DomainError("bilu_tichy_pair: violated condition " + condition);
}

std::vector<Complex> repeated(Complex a, int times) { return std::vector<Complex>(static_cast<std::size_t>(times), a); }

}  // namespace

BiluTichyPair bilu_tichy_pair(const std::string& case_id, const BiluTichyParams& prm) {
  BiluTichyPair out{case_id, power_map(1), power_map(1)};
  if (case_id == "i") {
    require(prm.m >= 1 && prm.r >= 0, "m >= 1, r >= 0");
    require(std::gcd(prm.m, prm.r) == 1, "gcd(m, r) = 1");
    require(prm.p.has_value(), "p given");
    out.first = power_map(prm.m);
    std::vector<Complex> z = repeated(0, prm.r);
    for (int j = 0; j < prm.m; ++j)
      for (const Complex a : prm.p->zero_list()) z.push_back(a);
    out.second = make_fbp(std::pow(prm.p->rho(), prm.m), z);
  } else if (case_id == "ii") {
    require(std::abs(prm.a) < 1, "|a| < 1");
    require(prm.p.has_value(), "p given");
    out.first = power_map(2);
    std::vector<Complex> z{Complex(0), prm.a};
    for (const Complex a : prm.p->zero_list()) {
      z.push_back(a);
      z.push_back(a);
    }
    out.second = make_fbp(prm.p->rho() * prm.p->rho(), z);
  } else if (case_id == "iii" || case_id == "iv") {
    require(prm.m >= 1 && prm.n >= 1 && prm.t > 0, "m, n >= 1 and t > 0");
    if (case_id == "iii") require(std::gcd(prm.m, prm.n) == 1, "gcd(m, n) = 1");
    else require(std::gcd(prm.m, prm.n) > 1, "gcd(m, n) > 1");
    out.first = cheby_blaschke(prm.m, prm.n * prm.t).product;
    out.second = cheby_blaschke(prm.n, prm.m * prm.t).product;
    if (case_id == "iv") out.second = rotate(out.second, Complex(-1));
  } else if (case_id == "v") {
    require(std::abs(prm.a) < 1 && std::abs(prm.b) < 1, "|a| < 1 and |b| < 1");
    std::vector<Complex> z = repeated(prm.a, 3);
    for (const Complex w : repeated(-prm.a, 3)) z.push_back(w);
    out.first = make_fbp(1, z);
    std::vector<Complex> z2 = repeated(0, 3);
    z2.push_back(prm.b);
    out.second = make_fbp(1, z2);
  } else {
    throw DomainError("bilu_tichy_pair: unknown case '" + case_id + "' (expected i, ii, iii, iv or v)");
  }
  return out;
}

}  // namespace bdyn
