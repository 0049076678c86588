#pragma once

#include <stdexcept>
#include <string>

namespace lorentz {

// Root of every error the library raises. Each subclass names the contract
// that was violated so callers (and the CLI) can map it to a diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point outside a chart domain, non-finite evaluation, or a stencil that
// leaves the domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Matrix that is not Lorentzian (wrong number of negative eigenvalues,
// near-degenerate, or non-symmetric), or a boundary that is not timelike.
class SignatureError : public Error {
 public:
  using Error::Error;
};

class SingularMetricError : public Error {
 public:
  using Error::Error;
};

// Coordinate change with a singular jacobian.
class ChartError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Time step exceeds the CFL certificate of the explicit scheme.
class StabilityError : public Error {
 public:
  using Error::Error;
};

// Grid too small for the requested region (edge contamination, empty core).
class GridError : public Error {
 public:
  using Error::Error;
};

// Input data violates a support or compatibility requirement.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace lorentz
