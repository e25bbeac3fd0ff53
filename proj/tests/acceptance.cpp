// Acceptance gate: one PASS/FAIL line per criterion, tolerances pinned here.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "bdyn/cheby.hpp"
#include "bdyn/dynamics.hpp"
#include "bdyn/elliptic_rational.hpp"
#include "bdyn/errors.hpp"
#include "bdyn/factorization.hpp"
#include "bdyn/monodromy.hpp"

using namespace bdyn;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

FBP random_fbp(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Complex> z;
  for (int i = 0; i < degree; ++i) z.push_back(std::polar(0.9 * std::sqrt(u(rng)), 2 * std::numbers::pi * u(rng)));
  return make_fbp(std::polar(1.0, 2 * std::numbers::pi * u(rng)), z);
}

// 100 points on [-gamma(t), gamma(t)] and 100 on |z| = 0.95
double grid_dev(double t, const std::function<Complex(Complex)>& f, const std::function<Complex(Complex)>& g) {
  const double gam = gamma_of_t(t);
  double dev = 0;
  for (int j = 0; j < 100; ++j) {
    const Complex x(gam * (-1 + 2 * (j + 0.5) / 100));
    const Complex z = std::polar(0.95, 2 * std::numbers::pi * j / 100);
    dev = std::max({dev, std::abs(f(x) - g(x)), std::abs(f(z) - g(z))});
  }
  return dev;
}

Outcome c1_blaschke_algebra() {
  std::mt19937_64 rng(1001);
  double boundary = 0, assoc = 0;
  bool degrees = true;
  std::vector<FBP> sample;
  for (int k = 0; k < 100; ++k) sample.push_back(random_fbp(rng, 1 + k % 8));
  for (const auto& f : sample) {
    // |f| on 1000 boundary points, evaluated directly
    for (int j = 0; j < 1000; ++j) boundary = std::max(boundary, std::abs(std::abs(f(std::polar(1.0, 2 * std::numbers::pi * j / 1000))) - 1));
  }
  for (int k = 0; k < 100; ++k) {
    const FBP& f = sample[k];
    const FBP& g = sample[(k + 1) % 100];
    degrees = degrees && compose(f, g).degree() == f.degree() * g.degree();
    // associativity on small-degree triples (product degree <= 27)
    const FBP a = random_fbp(rng, 1 + k % 3), b = random_fbp(rng, 1 + (k / 3) % 3), c = random_fbp(rng, 1 + (k / 9) % 3);
    const FBP left = compose(compose(a, b), c), right = compose(a, compose(b, c));
    assoc = std::max({assoc, sup_distance(left, right, 200, 0.9), sup_distance(left, right, 200, 1.0)});
  }
  return {boundary < 1e-10 && degrees && assoc < 1e-8,
          "boundary " + sci(boundary) + " < 1e-10, degrees multiply " + (degrees ? "yes" : "no") + ", associativity " +
              sci(assoc) + " < 1e-8"};
}

Outcome c2_normalization() {
  double dev = 0;
  bool counts = true;
  for (int n = 2; n <= 6; ++n)
    for (const double t : {0.2, 0.5, 1.0}) {
      const auto f = cheby_blaschke(n, t);
      dev = std::max(dev, std::abs(f.product(Complex(gamma_of_t(t))) - gamma_of_t(n * t)));
      counts = counts && equioscillation_count(f) == n + 1;
    }
  return {dev < 1e-9 && counts, "|T(gamma(t)) - gamma(nt)| " + sci(dev) + " < 1e-9, equioscillation n+1 " + (counts ? "yes" : "no")};
}

Outcome c3_nesting_commuting() {
  double nest = 0, comm = 0;
  for (const double t : {0.3, 0.5, 0.8}) {
    const FBP t6 = cheby_blaschke(6, t).product;
    const FBP t2 = cheby_blaschke(2, 3 * t).product, t3 = cheby_blaschke(3, t).product;
    const FBP s3 = cheby_blaschke(3, 2 * t).product, s2 = cheby_blaschke(2, t).product;
    nest = std::max(nest, grid_dev(t, t6, [&](Complex z) { return t2(t3(z)); }));
    comm = std::max(comm, grid_dev(t, [&](Complex z) { return t2(t3(z)); }, [&](Complex z) { return s3(s2(z)); }));
  }
  return {nest < 1e-8 && comm < 1e-8, "nesting " + sci(nest) + ", commuting " + sci(comm) + " < 1e-8"};
}

Outcome c4_rescaling() {
  double dev = 0;
  for (const int n : {3, 4})
    for (const double t : {0.3, 0.7}) {
      const FBP f = cheby_blaschke(n, t).product;
      dev = std::max(dev, grid_dev(t, f, [&](Complex z) { return eval_cheby_transcendental(n, t, z); }));
    }
  return {dev < 1e-8, "grid deviation " + sci(dev) + " < 1e-8"};
}

Outcome c5_critical_values() {
  double dev = 0;
  bool shape = true;
  for (const int n : {2, 3})
    for (const Complex tau : {Complex(0, 1), Complex(0.5, 1)}) {
      const auto fitted = ell_rat_fit(EllipticRationalParams(n, Tau(tau))).critical_values();
      const auto e = weierstrass_data(Tau(tau * static_cast<double>(n))).e_values;
      std::vector<Point> half{Point(e[0]), Point(e[1]), Point(e[2]), Point::at_infinity()};
      // every fitted value is a half-period value of the n tau lattice
      for (const auto& v : fitted) {
        double best = INFINITY;
        for (const auto& h : half) {
          if (v.infinite != h.infinite) continue;
          best = std::min(best, v.infinite ? 0.0 : std::abs(v.value - h.value));
        }
        dev = std::max(dev, best);
      }
      // n >= 3: all three plus infinity; n = 2: two finite values
      shape = shape && fitted.size() == (n >= 3 ? 4u : 2u);
    }
  return {dev < 1e-6 && shape, "max distance to half-period values " + sci(dev) + " < 1e-6, set sizes " + (shape ? "ok" : "wrong")};
}

Outcome c6_gamma0() {
  double dev = 0;
  bool verified = true;
  for (const ModularMatrix m : {ModularMatrix{1, 1, 0, 1}, ModularMatrix{1, 0, 3, 1}}) {
    const auto rep = equivalence_check(3, Tau(Complex(0, 1)), m);
    dev = std::max(dev, rep.max_deviation);
    verified = verified && rep.verified;
  }
  bool rejected = !gamma0_member(ModularMatrix{1, 0, 1, 1}, 3);
  try {
    equivalence_check(3, Tau(Complex(0, 1)), ModularMatrix{1, 0, 1, 1});
    rejected = false;
  } catch (const DomainError&) {
  }
  return {dev < 1e-5 && verified && rejected,
          "deviation " + sci(dev) + " < 1e-5, non-member rejected " + (rejected ? "yes" : "no")};
}

std::vector<std::vector<int>> sorted_types(const std::vector<Permutation>& ps) {
  std::vector<std::vector<int>> out;
  for (const auto& p : ps) out.push_back(p.cycle_type());
  std::sort(out.begin(), out.end());
  return out;
}

Outcome c7_monodromy() {
  bool cycles = true, cheb = true;
  for (int n = 2; n <= 8; ++n) {
    const auto rep = numerical_monodromy(power_map(n));
    cycles = cycles && rep.loops.size() == 1 && rep.loops[0].cycle_type() == std::vector<int>{n};
  }
  for (int n = 4; n <= 6; ++n) {
    const auto rep = numerical_monodromy(cheby_blaschke(n, 0.5).product);
    const auto [s, t] = chebyshev_representation(n);
    cheb = cheb && sorted_types(rep.loops) == sorted_types({s, t}) && group_order(rep.loops) == group_order({s, t});
  }
  return {cycles && cheb, std::string("z^n n-cycle for n<=8 ") + (cycles ? "yes" : "no") + ", T_{4,5,6} types and orders " +
                              (cheb ? "match" : "differ")};
}

Outcome c8_factorization() {
  const auto sizes = [](const FBP& f) {
    std::set<int> s;
    for (const auto& b : block_systems(numerical_monodromy(f))) s.insert(b.block_size());
    return s;
  };
  const bool blocks = sizes(power_map(6)) == std::set<int>{2, 3} && sizes(cheby_blaschke(6, 0.5).product) == std::set<int>{2, 3};
  const FBP conj = compose(DiskAutomorphism(std::polar(1.0, 0.4), Complex(0.1, 0.2)),
                           compose(cheby_blaschke(6, 0.3).product, DiskAutomorphism(Complex(1), Complex(-0.2, 0.05))));
  double recompose = 0;
  bool found = true;
  for (const FBP& f : {power_map(6), cheby_blaschke(6, 0.5).product, conj}) {
    const auto d = decompose_recognized(f);
    if (!d || !d->factors) {
      found = false;
      continue;
    }
    recompose = std::max(recompose, fbp_distance(compose(d->factors->first, d->factors->second), f));
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  std::vector<Complex> z;
  for (int i = 0; i < 5; ++i) z.push_back({u(rng), u(rng)});
  const bool generic = block_systems(numerical_monodromy(make_fbp(1, z))).empty();
  return {blocks && found && recompose < 1e-8 && generic,
          std::string("block sizes {2,3} ") + (blocks ? "yes" : "no") + ", recomposition " + sci(recompose) +
              " < 1e-8, degree-5 generic without blocks " + (generic ? "yes" : "no")};
}

Outcome c9_ritt() {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(0, 1);
  double power = 0, cheb = 0;
  for (int draw = 0; draw < 50; ++draw) {
    const int k = 2 + static_cast<int>(rng() % 3);
    int r = 1 + static_cast<int>(rng() % 4);
    while (std::gcd(k, r) != 1) ++r;
    std::vector<Complex> zeros(1 + rng() % 2);
    for (auto& a : zeros) a = std::polar(0.8 * std::sqrt(u(rng)), 2 * std::numbers::pi * u(rng));
    power = std::max(power, ritt_move_power(k, r, make_fbp(std::polar(1.0, 6.28 * u(rng)), zeros)).deviation);
    const int p = 2 + static_cast<int>(rng() % 3), q = 2 + static_cast<int>(rng() % 3);
    cheb = std::max(cheb, ritt_move_cheby(p, q, 0.2 + 0.8 * u(rng)).deviation);
  }
  const bool bound = zieve_muller_bound(2) == 8 && zieve_muller_bound(32) == 12;
  return {power < 1e-8 && cheb < 1e-8 && bound, "power " + sci(power) + ", Chebyshev " + sci(cheb) +
                                                    " < 1e-8 over 50 draws, bound(2)=8 bound(32)=12 " + (bound ? "yes" : "no")};
}

Outcome c10_dynamics() {
  const ExactMap z2(exact_power_map(2)), z3(exact_power_map(3));
  const GaussianRational half = GaussianRational::parse("1/2");
  const auto inter = orbit_intersection(z2, half, z3, half, 20);
  const bool one_hit = inter.hits.size() == 1 && inter.hits[0].i == 0 && inter.hits[0].j == 0 && inter.hits[0].confirmed;
  const auto ci = common_iteration(power_map(2), power_map(4), 8);
  const bool common = ci.exponents == std::pair{2, 1};
  const double h = canonical_height_estimate(z2, half, 6).canonical_estimate;
  const double hdev = std::abs(h - std::log(2.0));
  const auto growth = degree_growth_experiment(z2, z3, half, 10);
  const bool sep = growth.final_ratio >= std::pow(1.5, 5);
  return {one_hit && common && hdev < 1e-12 && sep,
          std::to_string(inter.hits.size()) + " intersection hit(s), common iteration " +
              (ci.exponents ? "(" + std::to_string(ci.exponents->first) + "," + std::to_string(ci.exponents->second) + ")" : "none") +
              ", |h - log 2| " + sci(hdev) + " < 1e-12, growth ratio " + sci(growth.final_ratio) + " >= " + sci(std::pow(1.5, 5))};
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"blaschke algebra", c1_blaschke_algebra},     {"Chebyshev-Blaschke normalization", c2_normalization},
      {"nesting and commuting", c3_nesting_commuting}, {"T=T rescaling", c4_rescaling},
      {"critical values at half periods", c5_critical_values},  {"Gamma_0(n) witnesses", c6_gamma0},
      {"monodromy", c7_monodromy},                   {"factorization", c8_factorization},
      {"Ritt moves", c9_ritt},                       {"dynamics", c10_dynamics},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  std::printf("%d/10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
