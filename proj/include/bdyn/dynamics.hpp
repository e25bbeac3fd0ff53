#pragma once

// Exact orbits over Q(i), naive and canonical heights, orbit intersections
// and the degree-growth experiment.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bdyn/exact_map.hpp"
#include "bdyn/gaussian.hpp"

namespace bdyn {

inline constexpr std::size_t kDefaultBitCap = std::size_t{1} << 20;

struct Orbit {
  std::vector<GaussianRational> points;  // f^0(x), ..., f^N(x)
  std::optional<int> cycle_start;        // first index of the periodic part
  int cycle_length = 0;
  bool preperiodic() const { return cycle_start.has_value(); }
};

/// Throws GrowthCapExceeded when a coordinate needs more than bit_cap bits.
Orbit orbit(const ExactMap& f, const GaussianRational& x, int steps, std::size_t bit_cap = kDefaultBitCap);

struct HeightEstimate {
  double naive = 0;               // h(x)
  double canonical_estimate = 0;  // h(f^N x) / d^N
  int iterations_used = 0;
  bool preperiodic = false;
  std::vector<double> trace;        // h(f^m x) / d^m, m = 0..N
  std::vector<double> differences;  // trace[m] - trace[m-1]
};

HeightEstimate canonical_height_estimate(const ExactMap& f, const GaussianRational& x, int steps,
                                         std::size_t bit_cap = kDefaultBitCap);

struct IntersectionHit {
  int i = 0;
  int j = 0;
  std::optional<GaussianRational> point;  // known when either side was computed exactly
  bool confirmed = false;                 // f^i(x) = g^j(y) checked exactly
};

struct IntersectionReport {
  std::vector<IntersectionHit> hits;
  int exact_f = -1;  // last index of each orbit computed exactly
  int exact_g = -1;
  std::vector<std::uint64_t> primes;  // fingerprint primes used beyond the exact range
};

/// All (i, j) <= steps with f^i(x) = g^j(y).  Exact hash join while both
/// orbits stay under the bit cap; beyond it, candidates come from orbits
/// reduced modulo several large primes and are reported unconfirmed.
IntersectionReport orbit_intersection(const ExactMap& f, const GaussianRational& x, const ExactMap& g,
                                      const GaussianRational& y, int steps, std::size_t bit_cap = kDefaultBitCap,
                                      int fingerprints = 3);

struct GrowthRow {
  int m = 0;
  double h_f = 0;
  double h_g = 0;
};

struct DegreeGrowthReport {
  std::vector<GrowthRow> rows;
  double rate_f = 0;  // fitted growth factor of h(f^m x) per step
  double rate_g = 0;
  double final_ratio = 0;  // larger-degree height over smaller-degree height at m = N
  double required_ratio = 0;  // (d_large / d_small)^(N/2)
  bool separated = false;
};

/// Requires deg f != deg g and x not preperiodic for the larger-degree map.
DegreeGrowthReport degree_growth_experiment(const ExactMap& f, const ExactMap& g, const GaussianRational& x, int steps,
                                            std::size_t bit_cap = kDefaultBitCap);

}  // namespace bdyn
