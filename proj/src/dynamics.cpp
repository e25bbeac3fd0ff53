#include "bdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "bdyn/errors.hpp"

namespace bdyn {

namespace {

void check_cap(const GaussianRational& x, int index, std::size_t cap) {
  const std::size_t b = x.bits();
  if (b > cap) throw GrowthCapExceeded(static_cast<std::size_t>(index), b);
}

// Exact prefix of the orbit, stopping quietly at the cap.
std::vector<GaussianRational> exact_prefix(const ExactMap& f, const GaussianRational& x, int steps, std::size_t cap) {
  std::vector<GaussianRational> out;
  try {
    const Orbit o = orbit(f, x, steps, cap);
    out = o.points;
  } catch (const GrowthCapExceeded& e) {
    GaussianRational p = x;
    for (std::size_t k = 0; k < e.index(); ++k) {
      out.push_back(p);
      p = f(p);
    }
  }
  return out;
}

double fitted_rate(const std::vector<double>& h) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t m = 1; m < h.size(); ++m) {
    if (!(h[m] > 0)) continue;
    const double x = static_cast<double>(m), y = std::log(h[m]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return 0;
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return std::exp(slope);
}

}  // namespace

Orbit orbit(const ExactMap& f, const GaussianRational& x, int steps, std::size_t bit_cap) {
  if (steps < 0) throw DomainError("orbit needs steps >= 0");
  Orbit out;
  out.points.reserve(static_cast<std::size_t>(steps) + 1);
  std::unordered_multimap<std::size_t, int> seen;
  check_cap(x, 0, bit_cap);
  out.points.push_back(x);
  seen.emplace(x.hash(), 0);
  for (int k = 1; k <= steps; ++k) {
    if (out.cycle_start) {
      // periodic continuation
      out.points.push_back(out.points[static_cast<std::size_t>(k - out.cycle_length)]);
      continue;
    }
    GaussianRational next = f(out.points.back());
    check_cap(next, k, bit_cap);
    const auto [lo, hi] = seen.equal_range(next.hash());
    for (auto it = lo; it != hi; ++it)
      if (out.points[static_cast<std::size_t>(it->second)] == next) {
        out.cycle_start = it->second;
        out.cycle_length = k - it->second;
        break;
      }
    seen.emplace(next.hash(), k);
    out.points.push_back(std::move(next));
  }
  return out;
}

HeightEstimate canonical_height_estimate(const ExactMap& f, const GaussianRational& x, int steps, std::size_t bit_cap) {
  if (f.degree() < 2) throw DomainError("canonical height needs deg f >= 2");
  const Orbit o = orbit(f, x, steps, bit_cap);
  HeightEstimate est;
  est.naive = naive_height(x);
  est.iterations_used = steps;
  est.preperiodic = o.preperiodic();
  double scale = 1;
  for (int m = 0; m <= steps; ++m) {
    est.trace.push_back(naive_height(o.points[static_cast<std::size_t>(m)]) / scale);
    if (m > 0) est.differences.push_back(est.trace[static_cast<std::size_t>(m)] - est.trace[static_cast<std::size_t>(m - 1)]);
    scale *= f.degree();
  }
  est.canonical_estimate = est.preperiodic ? 0.0 : est.trace.back();
  return est;
}

IntersectionReport orbit_intersection(const ExactMap& f, const GaussianRational& x, const ExactMap& g,
                                      const GaussianRational& y, int steps, std::size_t bit_cap, int fingerprints) {
  if (steps < 0) throw DomainError("orbit_intersection needs steps >= 0");
  IntersectionReport rep;
  const auto of = exact_prefix(f, x, steps, bit_cap);
  const auto og = exact_prefix(g, y, steps, bit_cap);
  rep.exact_f = static_cast<int>(of.size()) - 1;
  rep.exact_g = static_cast<int>(og.size()) - 1;
  if (rep.exact_f < 0 || rep.exact_g < 0) throw GrowthCapExceeded(0, std::max(x.bits(), y.bits()));

  const auto n = static_cast<std::size_t>(steps) + 1;
  if (of.size() == n && og.size() == n) {
    std::unordered_multimap<std::size_t, int> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(of[i].hash(), static_cast<int>(i));
    for (std::size_t j = 0; j < n; ++j) {
      const auto [lo, hi] = index.equal_range(og[j].hash());
      for (auto it = lo; it != hi; ++it)
        if (of[static_cast<std::size_t>(it->second)] == og[j])
          rep.hits.push_back({it->second, static_cast<int>(j), og[j], true});
    }
  } else {
    // fingerprints: a true hit agrees modulo every prime
    std::vector<std::vector<std::uint64_t>> kf(n), kg(n);
    for (const std::uint64_t p : fingerprint_primes(4 * fingerprints)) {
      if (static_cast<int>(rep.primes.size()) == fingerprints) break;
      const ModularField field(p);
      const ModularMap mf(f, field), mg(g, field);
      if (!mf.good_reduction() || !mg.good_reduction()) continue;
      rep.primes.push_back(p);
      std::uint64_t a = reduce_point(field, x), b = reduce_point(field, y);
      for (std::size_t k = 0; k < n; ++k) {
        kf[k].push_back(a);
        kg[k].push_back(b);
        a = mf(a);
        b = mg(b);
      }
    }
    std::map<std::vector<std::uint64_t>, std::vector<int>> index;
    for (std::size_t i = 0; i < n; ++i) index[kf[i]].push_back(static_cast<int>(i));
    for (std::size_t j = 0; j < n; ++j) {
      const auto it = index.find(kg[j]);
      if (it == index.end()) continue;
      for (const int i : it->second) {
        const bool exact_i = i <= rep.exact_f, exact_j = static_cast<int>(j) <= rep.exact_g;
        if (exact_i && exact_j) {
          if (of[static_cast<std::size_t>(i)] == og[j]) rep.hits.push_back({i, static_cast<int>(j), og[j], true});
          continue;
        }
        IntersectionHit hit{i, static_cast<int>(j), std::nullopt, false};
        if (exact_i) hit.point = of[static_cast<std::size_t>(i)];
        else if (exact_j) hit.point = og[j];
        rep.hits.push_back(hit);
      }
    }
  }
  std::sort(rep.hits.begin(), rep.hits.end(),
            [](const IntersectionHit& a, const IntersectionHit& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  return rep;
}

DegreeGrowthReport degree_growth_experiment(const ExactMap& f, const ExactMap& g, const GaussianRational& x, int steps,
                                            std::size_t bit_cap) {
  if (f.degree() == g.degree()) throw DomainError("degree_growth_experiment needs deg f != deg g");
  if (steps < 1) throw DomainError("degree_growth_experiment needs steps >= 1");
  const bool g_larger = g.degree() > f.degree();
  const ExactMap& big = g_larger ? g : f;
  const auto est = canonical_height_estimate(big, x, steps, bit_cap);
  if (est.preperiodic || est.canonical_estimate <= 1e-6)
    throw DomainError("x = " + x.to_string() + " is preperiodic for the larger-degree map");
  const Orbit of = orbit(f, x, steps, bit_cap);
  const Orbit og = orbit(g, x, steps, bit_cap);
  DegreeGrowthReport rep;
  std::vector<double> hf, hg;
  for (int m = 0; m <= steps; ++m) {
    const auto k = static_cast<std::size_t>(m);
    rep.rows.push_back({m, naive_height(of.points[k]), naive_height(og.points[k])});
    hf.push_back(rep.rows.back().h_f);
    hg.push_back(rep.rows.back().h_g);
  }
  rep.rate_f = fitted_rate(hf);
  rep.rate_g = fitted_rate(hg);
  const double h_big = g_larger ? hg.back() : hf.back();
  const double h_small = g_larger ? hf.back() : hg.back();
  const double d_big = big.degree(), d_small = g_larger ? f.degree() : g.degree();
  rep.required_ratio = std::pow(d_big / d_small, steps / 2.0);
  rep.final_ratio = h_small > 0 ? h_big / h_small : INFINITY;
  rep.separated = rep.final_ratio >= rep.required_ratio;
  return rep;
}

}  // namespace bdyn
