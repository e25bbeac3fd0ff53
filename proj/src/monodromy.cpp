#include "bdyn/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "bdyn/errors.hpp"

namespace bdyn {

namespace {

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

// Base point whose straight paths to every loop clear the other critical
// values by at least `clearance`.
std::optional<Complex> choose_base_point(const std::vector<Complex>& cvs, double r, double clearance) {
  std::optional<Complex> best;
  double best_score = -1;
  for (const double radius : {0.6, 0.8, 0.4, 0.9, 0.2}) {
    for (int j = 0; j < 32; ++j) {
      const Complex b = std::polar(radius, 2.0 * std::numbers::pi * (j + 0.123) / 32);
      double score = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < cvs.size(); ++i) {
        score = std::min(score, std::abs(b - cvs[i]) - 2 * r);
        const Complex entry = cvs[i] + r * (b - cvs[i]) / std::abs(b - cvs[i]);
        for (std::size_t k = 0; k < cvs.size(); ++k)
          if (k != i) score = std::min(score, segment_distance(cvs[k], b, entry) - clearance);
      }
      if (score > best_score) {
        best_score = score;
        best = b;
      }
    }
  }
  if (best_score < 0) return std::nullopt;
  return best;
}

class Tracker {
 public:
  Tracker(const FBP& f, const MonodromyOptions& opt, double r) : f_(f), opt_(opt), r_(r) {}

  // Continues every sheet along w(s), s in [0, 1].
  template <typename Path>
  void follow(std::vector<Complex>& sheets, const Path& w, double length) {
    double s = 0;
    double h = std::min(1.0, opt_.initial_step * r_ / length);
    const double h_max = std::min(1.0, 0.5 * r_ / length);
    int steps = 0;
    while (s < 1.0) {
      if (++steps > opt_.max_steps) throw NumericalError("monodromy: continuation step budget exhausted");
      const double s1 = std::min(1.0, s + h);
      std::vector<Complex> next = sheets;
      if (advance(next, w(s), w(s1))) {
        sheets = std::move(next);
        s = s1;
        h = std::min(h_max, 1.5 * h);
      } else {
        h /= 2;
        if (h * length < 1e-13) throw NumericalError("monodromy: step size underflow (fiber collision)");
      }
    }
  }

 private:
  bool advance(std::vector<Complex>& sheets, Complex w0, Complex w1) const {
    const std::size_t n = sheets.size();
    std::vector<double> gap(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) gap[i] = std::min(gap[i], std::abs(sheets[i] - sheets[j]));
    std::vector<Complex> moved(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex z0 = sheets[i];
      const Complex d0 = f_.derivative(z0);
      if (std::abs(d0) < 1e-14) return false;
      Complex z = z0 + (w1 - w0) / d0;
      bool converged = false;
      double last_step = std::numeric_limits<double>::infinity();
      for (int it = 0; it < 3; ++it) {
        const Complex step = (f_(z) - w1) / f_.derivative(z);
        const double size = std::abs(step);
        if (size > 0.5 * last_step && size > 1e-14) return false;  // not contracting
        z -= step;
        last_step = size;
        if (size <= 1e-14 * std::max(1.0, std::abs(z)) || std::abs(f_(z) - w1) < 1e-14) {
          converged = true;
          break;
        }
      }
      if (!converged && std::abs(f_(z) - w1) > 1e-12) return false;
      if (std::abs(z - z0) > 0.5 * gap[i]) return false;
      moved[i] = z;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (std::abs(moved[i] - moved[j]) < opt_.match_radius) return false;
    sheets = std::move(moved);
    return true;
  }

  const FBP& f_;
  const MonodromyOptions& opt_;
  double r_;
};

}  // namespace

MonodromyRep numerical_monodromy(const FBP& f, const MonodromyOptions& options) {
  const int n = f.degree();
  if (n < 2) throw DomainError("monodromy needs degree >= 2");
  const auto crit = critical_data(f);
  MonodromyRep rep;
  rep.degree = n;
  rep.critical_values = crit.critical_values;
  std::sort(rep.critical_values.begin(), rep.critical_values.end(), lex_less);
  const auto& cvs = rep.critical_values;

  double spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cvs.size(); ++i) {
    spacing = std::min(spacing, 1.0 - std::abs(cvs[i]));
    for (std::size_t j = i + 1; j < cvs.size(); ++j) spacing = std::min(spacing, std::abs(cvs[i] - cvs[j]));
  }
  double r = options.radius_factor * spacing;
  std::optional<Complex> base;
  for (int attempt = 0; attempt < 6 && !base; ++attempt) {
    base = choose_base_point(cvs, r, r);
    if (!base) r /= 2;
  }
  if (!base) throw NumericalError("monodromy: no base point with clear paths to all critical values");
  rep.base_point = *base;
  rep.loop_radius = r;

  const Poly num = f.numerator();
  const Poly den = f.denominator();
  rep.base_fiber = poly_roots(poly_add(num, poly_scale(den, -rep.base_point)));
  std::sort(rep.base_fiber.begin(), rep.base_fiber.end(), lex_less);
  for (std::size_t i = 0; i + 1 < rep.base_fiber.size(); ++i)
    for (std::size_t j = i + 1; j < rep.base_fiber.size(); ++j)
      if (std::abs(rep.base_fiber[i] - rep.base_fiber[j]) < 1e3 * options.match_radius)
        throw NumericalError("monodromy: base fiber is not separated");

  Tracker tracker(f, options, r);
  const Complex b = rep.base_point;
  for (const Complex v : cvs) {
    const Complex dir = (b - v) / std::abs(b - v);
    const Complex entry = v + r * dir;
    const double seg = std::abs(entry - b);
    std::vector<Complex> sheets = rep.base_fiber;
    tracker.follow(sheets, [&](double s) { return b + s * (entry - b); }, seg);
    tracker.follow(sheets, [&](double s) { return v + r * dir * std::polar(1.0, 2.0 * std::numbers::pi * s); },
                   2.0 * std::numbers::pi * r);
    tracker.follow(sheets, [&](double s) { return entry + s * (b - entry); }, seg);

    std::vector<int> images(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
      int hit = -1;
      for (int j = 0; j < n; ++j)
        if (std::abs(sheets[i] - rep.base_fiber[j]) < options.match_radius) hit = j;
      if (hit < 0) {
        std::ostringstream msg;
        msg << "monodromy: loop around " << v << " ended off the base fiber";
        throw NumericalError(msg.str());
      }
      images[static_cast<std::size_t>(i)] = hit;
    }
    rep.loops.emplace_back(std::move(images));
  }
  return rep;
}

bool riemann_hurwitz_holds(const MonodromyRep& rep) {
  int total = 0;
  for (const auto& p : rep.loops) total += rep.degree - static_cast<int>(p.cycle_type().size());
  return total == rep.degree - 1;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

// Canonical label vector: label[i] = smallest element of i's block.
using Labels = std::vector<int>;

// Finest invariant partition in which all the given pairs are joined.
Labels invariant_closure(const std::vector<Permutation>& gens, int n, std::vector<std::pair<int, int>> pending) {
  UnionFind uf(n);
  for (std::size_t q = 0; q < pending.size(); ++q) {
    const auto [a, b] = pending[q];
    if (!uf.unite(a, b)) continue;
    for (const auto& g : gens) pending.emplace_back(g(a), g(b));
  }
  Labels out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = uf.find(i);
  return out;
}

BlockSystem to_system(const Labels& lab) {
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < lab.size(); ++i) groups[lab[i]].push_back(static_cast<int>(i));
  BlockSystem sys;
  for (auto& [k, v] : groups) sys.blocks.push_back(std::move(v));
  return sys;
}

}  // namespace

std::vector<BlockSystem> block_systems(const std::vector<Permutation>& gens) {
  if (gens.empty()) return {};
  const int n = gens[0].size();
  std::set<Labels> found;
  for (int i = 1; i < n; ++i) found.insert(invariant_closure(gens, n, {{0, i}}));
  // joins of invariant partitions are invariant
  std::vector<Labels> all(found.begin(), found.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<std::pair<int, int>> pairs;
      for (int x = 0; x < n; ++x) {
        pairs.emplace_back(x, all[i][static_cast<std::size_t>(x)]);
        pairs.emplace_back(x, all[j][static_cast<std::size_t>(x)]);
      }
      Labels joined = invariant_closure(gens, n, pairs);
      if (found.insert(joined).second) all.push_back(joined);
    }
  std::vector<BlockSystem> out;
  for (const auto& lab : found) {
    BlockSystem sys = to_system(lab);
    const int d = sys.block_size();
    bool equal = true;
    for (const auto& b : sys.blocks) equal = equal && static_cast<int>(b.size()) == d;
    if (equal && d > 1 && d < n) out.push_back(std::move(sys));
  }
  std::sort(out.begin(), out.end(),
            [](const BlockSystem& a, const BlockSystem& b) {
              if (a.block_size() != b.block_size()) return a.block_size() < b.block_size();
              return a.blocks < b.blocks;
            });
  return out;
}

std::vector<BlockSystem> block_systems(const MonodromyRep& rep) { return block_systems(rep.loops); }

}  // namespace bdyn
