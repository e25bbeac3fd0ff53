#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bdyn {

/// Input outside the mathematical domain of an operation (bad tau, t <= 0,
/// a zero outside the disk, a matrix with determinant != 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed external input (JSON, exact point strings, CLI values).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical method failed to deliver the promised accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Construction-time cross validation failed; carries the observed deviation.
class ConstructionError : public NumericalError {
 public:
  ConstructionError(const std::string& what, double max_deviation)
      : NumericalError(what), max_deviation_(max_deviation) {}
  double max_deviation() const { return max_deviation_; }

 private:
  double max_deviation_;
};

/// Exact orbit coordinates outgrew the configured bit budget.
class GrowthCapExceeded : public NumericalError {
 public:
  GrowthCapExceeded(std::size_t index, std::size_t bits)
      : NumericalError("exact orbit exceeded the bit-size cap at index " +
                       std::to_string(index) + " (" + std::to_string(bits) +
                       " bits)"),
        index_(index),
        bits_(bits) {}
  std::size_t index() const { return index_; }
  std::size_t bits() const { return bits_; }

 private:
  std::size_t index_;
  std::size_t bits_;
};

}  // namespace bdyn
