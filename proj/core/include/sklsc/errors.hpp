#pragma once

#include <stdexcept>
#include <string>

namespace sklsc {

// Bad grids, mismatched fields, invalid arguments.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A scaling constant landed inside the excluded band around (2n-1)/n.
struct DegenerateKappaError : std::domain_error {
  using std::domain_error::domain_error;
};

// An eigensolve ran out of budget or converged to a non-positive vector.
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BracketError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sklsc
