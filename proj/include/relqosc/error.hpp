#pragma once

#include <stdexcept>
#include <string>

namespace relqosc {

/// Argument outside the mathematical domain of a function (x <= 0 for a
/// singular superpotential, b <= 0 for a Pochhammer denominator, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A model or run configuration that violates its invariants.
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure inside a solve (non-convergence, non-finite data).
class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace relqosc
