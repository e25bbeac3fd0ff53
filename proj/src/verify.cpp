#include "bdyn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "bdyn/cheby.hpp"
#include "bdyn/elliptic.hpp"
#include "bdyn/elliptic_rational.hpp"
#include "bdyn/errors.hpp"
#include "bdyn/factorization.hpp"
#include "bdyn/monodromy.hpp"

namespace bdyn {

namespace {

std::string fmt(const char* prefix, double v) {
  std::ostringstream s;
  s << prefix << v;
  return s.str();
}

void add(SuiteResult& r, std::string label, double dev, double tol) {
  r.rows.push_back({std::move(label), dev, tol, dev <= tol});
}

// 100 points of [-gamma(t), gamma(t)] and 100 on the circle of radius 0.9
std::vector<Complex> grid(double t) {
  const double g = gamma_of_t(t);
  std::vector<Complex> pts;
  for (int j = 0; j < 100; ++j) {
    pts.emplace_back(g * std::cos(std::numbers::pi * (j + 0.5) / 100));
    pts.push_back(std::polar(0.9, 2.0 * std::numbers::pi * (j + 0.25) / 100));
  }
  return pts;
}

template <typename F, typename G>
double grid_deviation(double t, const F& f, const G& g) {
  double dev = 0;
  for (const Complex z : grid(t)) dev = std::max(dev, std::abs(f(z) - g(z)));
  return dev;
}

SuiteResult nesting(const VerifyOptions& o) {
  SuiteResult r{"nesting", {}};
  for (const double t : o.t_values) {
    const FBP whole = cheby_blaschke(6, t).product;
    const FBP nested = compose(cheby_blaschke(2, 3 * t).product, cheby_blaschke(3, t).product);
    add(r, fmt("T6 vs T2(3t) o T3, t=", t), grid_deviation(t, whole, nested), o.identity_tol);
  }
  return r;
}

SuiteResult commuting(const VerifyOptions& o) {
  SuiteResult r{"commuting", {}};
  for (const double t : o.t_values) {
    const FBP a = compose(cheby_blaschke(2, 3 * t).product, cheby_blaschke(3, t).product);
    const FBP b = compose(cheby_blaschke(3, 2 * t).product, cheby_blaschke(2, t).product);
    add(r, fmt("T2(3t) o T3 vs T3(2t) o T2, t=", t), grid_deviation(t, a, b), o.identity_tol);
  }
  return r;
}

SuiteResult ttt(const VerifyOptions& o) {
  SuiteResult r{"ttt", {}};
  for (const int n : {3, 4})
    for (const double t : {0.3, 0.7}) {
      const FBP f = cheby_blaschke(n, t).product;
      const double dev = grid_deviation(t, f, [&](Complex z) { return eval_cheby_transcendental(n, t, z); });
      add(r, "n=" + std::to_string(n) + fmt(", t=", t), dev, o.identity_tol);
    }
  return r;
}

SuiteResult normalization(const VerifyOptions& o) {
  SuiteResult r{"normalization", {}};
  for (int n = 2; n <= 6; ++n)
    for (const double t : {0.2, 0.5, 1.0}) {
      const auto f = cheby_blaschke(n, t);
      const std::string tag = "n=" + std::to_string(n) + fmt(", t=", t);
      add(r, "T(gamma(t)) - gamma(nt), " + tag, std::abs(f.product(gamma_of_t(t)) - gamma_of_t(n * t)),
          o.normalization_tol);
      add(r, "equioscillation count - (n+1), " + tag, std::abs(equioscillation_count(f) - (n + 1)), 0.0);
    }
  return r;
}

SuiteResult critvals(const VerifyOptions& o) {
  SuiteResult r{"critvals", {}};
  for (const int n : {2, 3})
    for (const Complex tau : {Complex(0, 1), Complex(0.5, 1)}) {
      const EllipticRationalParams p(n, Tau(tau));
      const double dev = point_set_distance(ell_rat_fit(p).critical_values(), ell_rat_critical_values(p).values);
      std::ostringstream label;
      label << "n=" << n << ", tau=" << tau.real() << "+" << tau.imag() << "i";
      add(r, label.str(), dev, o.critval_tol);
    }
  return r;
}

SuiteResult gamma0(const VerifyOptions& o) {
  SuiteResult r{"gamma0", {}};
  const Tau tau(Complex(0, 1));
  for (const ModularMatrix m : {ModularMatrix{1, 1, 0, 1}, ModularMatrix{1, 0, 3, 1}}) {
    const auto rep = equivalence_check(3, tau, m);
    const std::string tag = "[[" + std::to_string(m.a) + "," + std::to_string(m.b) + "],[" + std::to_string(m.c) + "," +
                            std::to_string(m.d) + "]]";
    add(r, "equivalence " + tag, rep.max_deviation, o.gamma0_tol);
    add(r, "j-invariant " + tag, rep.j_deviation, 1e-6);
  }
  bool rejected = false;
  try {
    equivalence_check(3, tau, ModularMatrix{1, 0, 1, 1});
  } catch (const DomainError&) {
    rejected = true;
  }
  add(r, "non-member [[1,0],[1,1]] rejected", rejected ? 0.0 : 1.0, 0.0);
  return r;
}

std::vector<std::vector<int>> sorted_types(const std::vector<Permutation>& ps) {
  std::vector<std::vector<int>> out;
  for (const auto& p : ps) out.push_back(p.cycle_type());
  std::sort(out.begin(), out.end());
  return out;
}

SuiteResult monodromy(const VerifyOptions& o) {
  SuiteResult r{"monodromy", {}};
  for (int n = 2; n <= 8; ++n) {
    const auto rep = numerical_monodromy(power_map(n));
    const bool ok = rep.loops.size() == 1 && rep.loops[0].cycle_type() == std::vector<int>{n};
    add(r, "z^" + std::to_string(n) + " loop is an n-cycle", ok ? 0.0 : 1.0, 0.0);
  }
  const double t = o.t_values.empty() ? 0.5 : o.t_values.front();
  for (int n = 4; n <= 6; ++n) {
    const auto rep = numerical_monodromy(cheby_blaschke(n, t).product);
    const auto [s, tr] = chebyshev_representation(n);
    const std::string tag = "T" + std::to_string(n) + fmt(", t=", t);
    add(r, "cycle types " + tag, sorted_types(rep.loops) == sorted_types({s, tr}) ? 0.0 : 1.0, 0.0);
    const double got = static_cast<double>(group_order(rep.loops, 1000000));
    const double want = static_cast<double>(group_order({s, tr}, 1000000));
    add(r, "group order " + tag, std::abs(got - want), 0.0);
  }
  return r;
}

SuiteResult ritt(const VerifyOptions& o) {
  SuiteResult r{"ritt", {}};
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto random_zero = [&] { return std::polar(0.8 * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng)); };
  double power_dev = 0, cheby_dev = 0;
  for (int draw = 0; draw < o.random_draws; ++draw) {
    const int k = 2 + static_cast<int>(rng() % 2);
    int rr = 1 + static_cast<int>(rng() % 3);
    if (std::gcd(k, rr) != 1) ++rr;
    std::vector<Complex> zeros(1 + rng() % 2);
    for (auto& a : zeros) a = random_zero();
    const FBP g = make_fbp(std::polar(1.0, 2.0 * std::numbers::pi * unit(rng)), zeros);
    power_dev = std::max(power_dev, ritt_move_power(k, rr, g).deviation);

    const int p = 2 + static_cast<int>(rng() % 2), q = 2 + static_cast<int>(rng() % 3);
    const double t = 0.2 + 0.8 * unit(rng);
    cheby_dev = std::max(cheby_dev, ritt_move_cheby(p, q, t).deviation);
  }
  add(r, "power swap, " + std::to_string(o.random_draws) + " draws", power_dev, o.identity_tol);
  add(r, "Chebyshev-Blaschke swap, " + std::to_string(o.random_draws) + " draws", cheby_dev, o.identity_tol);
  add(r, "zieve_muller_bound(2) = 8", std::abs(zieve_muller_bound(2) - 8), 0.0);
  add(r, "zieve_muller_bound(32) = 12", std::abs(zieve_muller_bound(32) - 12), 0.0);
  return r;
}

}  // namespace

bool SuiteResult::passed() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CheckRow& c) { return c.passed; });
}

double SuiteResult::max_deviation() const {
  double m = 0;
  for (const auto& c : rows) m = std::max(m, c.deviation);
  return m;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"nesting",  "commuting", "ttt",       "normalization",
                                              "critvals", "gamma0",    "monodromy", "ritt"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  if (name == "nesting") return nesting(options);
  if (name == "commuting") return commuting(options);
  if (name == "ttt") return ttt(options);
  if (name == "normalization") return normalization(options);
  if (name == "critvals") return critvals(options);
  if (name == "gamma0") return gamma0(options);
  if (name == "monodromy") return monodromy(options);
  if (name == "ritt") return ritt(options);
  throw InputError("unknown suite '" + name + "'");
}

}  // namespace bdyn
