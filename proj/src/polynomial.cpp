#include "bdyn/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "bdyn/errors.hpp"

namespace bdyn {

Poly poly_from_roots(const std::vector<Complex>& roots, Complex lead) {
  Poly p = Poly::Zero(static_cast<Eigen::Index>(roots.size()) + 1);
  p[0] = lead;
  Eigen::Index deg = 0;
  for (const Complex r : roots) {
    // multiply by (z - r)
    p[deg + 1] = p[deg];
    for (Eigen::Index i = deg; i > 0; --i) p[i] = p[i - 1] - r * p[i];
    p[0] = -r * p[0];
    ++deg;
  }
  return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c = Poly::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly c = Poly::Zero(std::max(a.size(), b.size()));
  c.head(a.size()) += a;
  c.head(b.size()) += b;
  return c;
}

Poly poly_scale(const Poly& a, Complex s) { return a * s; }

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return Poly::Zero(1);
  Poly d(p.size() - 1);
  for (Eigen::Index i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
  return d;
}

Complex poly_eval(const Poly& p, Complex z) {
  Complex acc(0);
  for (Eigen::Index i = p.size() - 1; i >= 0; --i) acc = acc * z + p[i];
  return acc;
}

Poly poly_trim(const Poly& p, double rel_tol) {
  const double scale = p.cwiseAbs().maxCoeff();
  Eigen::Index n = p.size();
  while (n > 1 && std::abs(p[n - 1]) <= rel_tol * scale) --n;
  return p.head(n);
}

Poly poly_taylor_shift(const Poly& p, Complex c) {
  // repeated synthetic division
  Poly work = p;
  const Eigen::Index n = p.size();
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = n - 2; i >= k; --i) work[i] += c * work[i + 1];
  return work;
}

namespace {

// Parlett-Reinsch balancing by powers of two.
void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  bool done = false;
  for (int sweep = 0; sweep < 100 && !done; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0, c = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0 || r == 0) continue;
      double g = r / radix;
      double f = 1;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

std::vector<Complex> raw_roots(const Poly& p) {
  const Eigen::Index n = p.size() - 1;
  if (n <= 0) return {};
  if (n == 1) return {-p[0] / p[1]};
  // zero roots split off exactly
  Eigen::Index zeros = 0;
  while (zeros < n && p[zeros] == Complex(0)) ++zeros;
  std::vector<Complex> out(static_cast<std::size_t>(zeros), Complex(0));
  const Eigen::Index m = n - zeros;
  if (m == 0) return out;
  if (m == 1) {
    out.push_back(-p[zeros] / p[zeros + 1]);
    return out;
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) comp(i, m - 1) = -p[zeros + i] / p[n];
  balance(comp);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  if (solver.info() != Eigen::Success) throw NumericalError("companion eigenvalue solver failed");
  for (Eigen::Index i = 0; i < m; ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

void polish(const Poly& p, const Poly& dp, Complex& z) {
  for (int it = 0; it < 2; ++it) {
    const Complex v = poly_eval(p, z);
    const Complex d = poly_eval(dp, z);
    if (d == Complex(0)) return;
    const Complex cand = z - v / d;
    if (std::abs(poly_eval(p, cand)) < std::abs(v)) z = cand;
    else return;
  }
}

// Single-linkage grouping of weighted points within radius (relative to
// max(1, |z|)).
std::vector<std::vector<std::size_t>> link_groups(const std::vector<Complex>& pts, double radius) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(pts[i]), std::abs(pts[j])});
      if (std::abs(pts[i] - pts[j]) <= radius * scale) parent[find(i)] = find(j);
    }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return groups;
}

// Polishes c as a simple root of p^(m-1) and checks that the Taylor
// coefficients below order m vanish there.
bool certifies_multiple_root(const Poly& p, Complex& c, int m) {
  if (m >= p.size()) return false;
  for (int it = 0; it < 6; ++it) {
    const Poly b = poly_taylor_shift(p, c);
    if (b[m] == Complex(0)) break;
    c -= b[m - 1] / (static_cast<double>(m) * b[m]);
  }
  const Poly b = poly_taylor_shift(p, c);
  const double scale = b.cwiseAbs().maxCoeff();
  for (int j = 0; j < m; ++j)
    if (std::abs(b[j]) > 1e-11 * scale) return false;
  return true;
}

}  // namespace

std::vector<RootCluster> poly_root_clusters(const Poly& p_in, double merge_radius, double loose_radius) {
  const Poly p = poly_trim(p_in);
  std::vector<Complex> roots = raw_roots(p);
  const Poly dp = poly_derivative(p);
  for (Complex& z : roots) polish(p, dp, z);

  std::vector<RootCluster> clusters;
  for (const auto& g : link_groups(roots, merge_radius)) {
    Complex sum(0);
    for (auto i : g) sum += roots[i];
    clusters.push_back({sum / static_cast<double>(g.size()), static_cast<int>(g.size())});
  }

  std::vector<Complex> centers;
  for (const auto& c : clusters) centers.push_back(c.center);
  std::vector<RootCluster> merged;
  for (const auto& g : link_groups(centers, loose_radius)) {
    if (g.size() == 1) {
      merged.push_back(clusters[g[0]]);
      continue;
    }
    Complex sum(0);
    int mult = 0;
    for (auto i : g) {
      sum += clusters[i].center * static_cast<double>(clusters[i].multiplicity);
      mult += clusters[i].multiplicity;
    }
    Complex mean = sum / static_cast<double>(mult);
    if (certifies_multiple_root(p, mean, mult)) {
      merged.push_back({mean, mult});
    } else {
      for (auto i : g) merged.push_back(clusters[i]);
    }
  }
  std::sort(merged.begin(), merged.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return merged;
}

std::vector<Complex> poly_roots(const Poly& p) {
  std::vector<Complex> out;
  for (const auto& c : poly_root_clusters(p))
    for (int i = 0; i < c.multiplicity; ++i) out.push_back(c.center);
  return out;
}

std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> assign(n);
  for (int j = 1; j <= n; ++j) assign[p[j] - 1] = j - 1;
  return assign;
}

double matched_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const auto n = static_cast<Eigen::Index>(a.size());
  if (n == 0) return 0;
  Eigen::MatrixXd cost(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) cost(i, j) = std::abs(a[i] - b[j]);
  const auto assign = hungarian(cost);
  double worst = 0;
  for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, cost(i, assign[i]));
  return worst;
}

}  // namespace bdyn
