#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bdyn {

/// Permutation of {0, ..., n-1}.  Cycle notation in and out is 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles_one_based);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  /// (a * b)(i) = a(b(i))
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }

  Permutation inverse() const;
  Permutation conjugated_by(const Permutation& p) const;  // p * this * p^-1
  bool is_identity() const;

  /// Nontrivial cycles, 0-based, each starting at its smallest element.
  std::vector<std::vector<int>> cycles() const;
  /// All cycle lengths including fixed points, descending.
  std::vector<int> cycle_type() const;
  /// "(1 2)(3 4)"; "()" for the identity.
  std::string to_cycle_string() const;

 private:
  std::vector<int> images_;
};

/// Order of the generated group by closure; returns 0 when it exceeds cap.
std::size_t group_order(const std::vector<Permutation>& gens, std::size_t cap = 2000000);
bool is_transitive(const std::vector<Permutation>& gens);

}  // namespace bdyn
