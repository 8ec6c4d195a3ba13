// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace survpath {

/// Malformed input: bad file syntax, out-of-range ids, broken topology.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A lightpath routing references a fiber that does not exist or does not
/// form a walk between the logical link's endpoints.
class RoutingError : public InputError {
 public:
  using InputError::InputError;
};

/// An instance violates its declared K or W limits.
class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

/// A caller-side precondition failed (e.g. W required but undeclared).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// No survivable path set exists: some fiber is used by every path.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(std::size_t fiber)
      : std::runtime_error("infeasible: fiber f" + std::to_string(fiber + 1) +
                           " is used by every path"),
        fiber_(fiber) {}

  /// Zero-based index of the fiber no path survives.
  std::size_t fiber() const noexcept { return fiber_; }

 private:
  std::size_t fiber_;
};

/// A randomized solver ran out of rounds. Retrying with another seed may
/// succeed.
class RandomizedFailure : public std::runtime_error {
 public:
  RandomizedFailure(const std::string& what, std::uint64_t seed)
      : std::runtime_error(what + " (seed " + std::to_string(seed) + ")"),
        seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

/// An exact search hit its node budget before proving optimality.
class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The LP solver produced a point that violates a constraint beyond
/// tolerance, or failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace survpath
