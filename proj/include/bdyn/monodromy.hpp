#pragma once

// Monodromy of a finite Blaschke product over its interior critical values,
// by numerical continuation of the fiber around small circles.

#include <vector>

#include "bdyn/blaschke.hpp"
#include "bdyn/permutation.hpp"

namespace bdyn {

struct MonodromyOptions {
  double radius_factor = 0.25;  // loop radius relative to the critical-value spacing
  double initial_step = 1.0 / 16.0;  // relative to the loop radius
  double match_radius = 1e-6;
  int max_steps = 200000;
};

struct MonodromyRep {
  int degree = 0;
  Complex base_point;
  double loop_radius = 0;
  std::vector<Complex> base_fiber;        // sorted lexicographically; index = sheet label
  std::vector<Complex> critical_values;   // sorted lexicographically
  std::vector<Permutation> loops;         // one per critical value
};

/// Each loop runs from the base point straight to the circle of radius r
/// around its critical value, once around counterclockwise, and back.
MonodromyRep numerical_monodromy(const FBP& f, const MonodromyOptions& options = {});

/// sum over loops of (n - #cycles) equals n - 1.
bool riemann_hurwitz_holds(const MonodromyRep& rep);

/// Partition of {0..n-1} into blocks of equal size preserved by the group.
struct BlockSystem {
  std::vector<std::vector<int>> blocks;
  int block_size() const { return blocks.empty() ? 0 : static_cast<int>(blocks[0].size()); }
};

/// All proper block systems (1 < block size < n), via minimal blocks
/// containing {0, i} and closure under joins.
std::vector<BlockSystem> block_systems(const std::vector<Permutation>& gens);
std::vector<BlockSystem> block_systems(const MonodromyRep& rep);

}  // namespace bdyn
