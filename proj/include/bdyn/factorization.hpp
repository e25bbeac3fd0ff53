#pragma once

// Factorization toolkit for the composition monoid of finite Blaschke
// products: degree lattices from monodromy, recognizers for the power,
// Chebyshev-Blaschke and rotational families, Ritt moves, common iterates
// and the five Bilu-Tichy pair families.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bdyn/blaschke.hpp"
#include "bdyn/monodromy.hpp"

namespace bdyn {

struct DegreeLattice {
  std::set<int> degrees;       // {1, n} and every proper block size
  bool has_full_cycle = false;  // some loop permutation is an n-cycle
  bool lattice_closed = true;   // closed under gcd and lcm (checked when has_full_cycle)
  MonodromyRep monodromy;
};

DegreeLattice factor_degree_lattice(const FBP& f, const MonodromyOptions& options = {});

struct Decomposition {
  std::string recognizer;  // "totally_ramified", "chebyshev", "rotational", "degrees_only"
  std::optional<std::pair<FBP, FBP>> factors;  // f = first o second
  std::vector<int> block_sizes;
  int symmetry_k = 0;   // rotational recognizer: order of the zero symmetry
  int symmetry_r = 0;   // multiplicity of the centre as a zero
  Complex symmetry_center;
  double chebyshev_t = 0;
  double deviation = 0;  // fbp_distance(compose(factors), f)
};

/// Tries the recognizers in order (totally ramified, Chebyshev-Blaschke,
/// rotational symmetry) and falls back to block sizes from monodromy.
/// nullopt for prime degree or when nothing indicates a decomposition.
std::optional<Decomposition> decompose_recognized(const FBP& f);

struct RittMove {
  FBP lhs;
  FBP rhs;
  double deviation = 0;
  bool equal = false;
};

/// (z^r g(z)^k) o z^k  and  z^k o (z^r g(z^k)), gcd(k, r) = 1.
RittMove ritt_move_power(int k, int r, const FBP& g);
/// T_{p,qt} o T_{q,t}  and  T_{q,pt} o T_{p,t}.
RittMove ritt_move_cheby(int p, int q, double t);

/// Product of the degrees of the factors before position index (1-based).
long long presentation_length(const std::vector<FBP>& factors, int index);
long long presentation_length(const std::vector<int>& degrees, int index);

/// floor(max(8, 2 + 2 log2 n)).
int zieve_muller_bound(int n);

struct CommonIteration {
  std::optional<std::pair<int, int>> exponents;  // f^k = g^l
  bool partial = false;  // some degree-compatible (k, l) exceeded the degree cap
};

CommonIteration common_iteration(const FBP& f, const FBP& g, int max_exponent, int degree_cap = 4096);

struct BiluTichyParams {
  int m = 2;
  int n = 3;
  int r = 1;
  double t = 0.5;
  Complex a{0.2, 0.0};
  Complex b{0.3, 0.0};
  std::optional<FBP> p;  // cases i and ii
};

struct BiluTichyPair {
  std::string case_id;
  FBP first;
  FBP second;
};

/// case_id in {"i", "ii", "iii", "iv", "v"}.
BiluTichyPair bilu_tichy_pair(const std::string& case_id, const BiluTichyParams& params);

}  // namespace bdyn
