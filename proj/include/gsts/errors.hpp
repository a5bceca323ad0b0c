#pragma once

#include <stdexcept>
#include <string>

namespace gsts {

// Invalid input: dimension mismatch, malformed structure, bad parameters.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An iterative kernel (SVD sweep, QR eigenvalue iteration, CG fallback)
// failed to converge within its budget.  Never silently ignored.
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A factorization hit a non-positive pivot (matrix not positive definite).
struct NotPositiveDefinite : std::runtime_error {
  NotPositiveDefinite(const std::string& what, std::size_t pivot_index)
      : std::runtime_error(what), pivot(pivot_index) {}
  std::size_t pivot;
};

// Malformed input file (Matrix Market, vectors, manifests).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace gsts
