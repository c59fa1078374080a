#pragma once

#include <stdexcept>
#include <string>

namespace sparsedom {

// A cube or value that should line up with the grid does not.
struct AlignmentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A cube reaches outside the region where data is defined.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Bad parameter value (eta out of range, p <= 1, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Non-finite samples or otherwise unusable data.
struct DataError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A constructed object failed its own verification (sparseness certificate,
// pointwise certificate, ...). These indicate a bug, not bad input.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller violated an operation contract (missing root cube in an
// augmentation family, hypothesis grid-check failed, ...).
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Config file could not be parsed.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sparsedom
