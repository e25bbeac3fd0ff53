#include "bdyn/permutation.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "bdyn/errors.hpp"

namespace bdyn {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (const int v : images_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)])
      throw DomainError("permutation images must form a bijection");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles_one_based) {
  std::vector<int> img = identity(n).images();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (const auto& cyc : cycles_one_based) {
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      const int a = cyc[j] - 1;
      const int b = cyc[(j + 1) % cyc.size()] - 1;
      if (a < 0 || a >= n || b < 0 || b >= n) throw DomainError("cycle entry out of range");
      if (used[static_cast<std::size_t>(a)]) throw DomainError("cycles must be disjoint");
      used[static_cast<std::size_t>(a)] = 1;
      img[static_cast<std::size_t>(a)] = b;
    }
  }
  return Permutation(std::move(img));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw DomainError("permutation sizes differ");
  std::vector<int> img(b.images_.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = a(b(static_cast<int>(i)));
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(images_.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(img));
}

Permutation Permutation::conjugated_by(const Permutation& p) const { return p * *this * p.inverse(); }

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < size(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<int> cyc;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
      seen[static_cast<std::size_t>(j)] = 1;
      cyc.push_back(j);
    }
    if (cyc.size() > 1) out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> lens;
  int covered = 0;
  for (const auto& c : cycles()) {
    lens.push_back(static_cast<int>(c.size()));
    covered += static_cast<int>(c.size());
  }
  for (int i = covered; i < size(); ++i) lens.push_back(1);
  std::sort(lens.rbegin(), lens.rend());
  return lens;
}

std::string Permutation::to_cycle_string() const {
  const auto cyc = cycles();
  if (cyc.empty()) return "()";
  std::ostringstream out;
  for (const auto& c : cyc) {
    out << '(';
    for (std::size_t j = 0; j < c.size(); ++j) out << (j ? " " : "") << c[j] + 1;
    out << ')';
  }
  return out.str();
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (const int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

std::size_t group_order(const std::vector<Permutation>& gens, std::size_t cap) {
  if (gens.empty()) return 1;
  const int n = gens[0].size();
  std::unordered_set<std::vector<int>, VecHash> seen;
  std::deque<Permutation> queue;
  const auto id = Permutation::identity(n);
  seen.insert(id.images());
  queue.push_back(id);
  while (!queue.empty()) {
    const Permutation cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Permutation next = g * cur;
      if (seen.insert(next.images()).second) {
        if (seen.size() > cap) return 0;
        queue.push_back(std::move(next));
      }
    }
  }
  return seen.size();
}

bool is_transitive(const std::vector<Permutation>& gens) {
  if (gens.empty()) return false;
  const int n = gens[0].size();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      const int j = g(i);
      if (!seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == n;
}

}  // namespace bdyn
