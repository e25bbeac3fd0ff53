#pragma once

// Identity suites: each row compares two computations of the same object
// and records the observed deviation against a pinned tolerance.

#include <cstdint>
#include <string>
#include <vector>

namespace bdyn {

struct CheckRow {
  std::string label;
  double deviation = 0;
  double tolerance = 0;
  bool passed = false;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckRow> rows;
  bool passed() const;
  double max_deviation() const;
};

struct VerifyOptions {
  std::vector<double> t_values{0.3, 0.5, 0.8};
  std::uint64_t seed = 20240601;
  int random_draws = 50;
  double identity_tol = 1e-8;
  double normalization_tol = 1e-9;
  double critval_tol = 1e-6;
  double gamma0_tol = 1e-5;
};

/// nesting, commuting, ttt, normalization, critvals, gamma0, monodromy, ritt.
const std::vector<std::string>& suite_names();
/// Throws InputError for an unknown name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& options = {});

}  // namespace bdyn
