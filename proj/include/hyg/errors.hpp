#pragma once

#include <stdexcept>
#include <string>

namespace hyg {

// Malformed input: wrong table sizes, unknown element names, missing
// convolution pairs, unparsable coefficients.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A well-formed table that breaks one of the hypergroup axioms. Carries the
// name of the first axiom that failed.
struct ValidationError : std::runtime_error {
  std::string axiom;
  ValidationError(std::string ax, const std::string& msg)
      : std::runtime_error(msg), axiom(std::move(ax)) {}
};

// The invariant-measure system has no strictly positive solution, or its
// solution space is not one-dimensional.
struct DegenerateInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Character computation failed: fewer joint eigenvectors than elements, or
// residuals above tolerance after all retries.
struct SpectralError : std::runtime_error {
  double worst_residual = 0.0;
  explicit SpectralError(const std::string& msg, double worst = 0.0)
      : std::runtime_error(msg), worst_residual(worst) {}
};

// Two redundant computations of the same object disagreed. Signals a broken
// dual or convolution table rather than bad user input.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subset enumeration refused because the element count exceeds the cap.
struct SizeCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A function whose transform ratio sits at 1 admitted no structural
// decomposition. Never expected on valid inputs.
struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hyg
