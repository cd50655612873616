#pragma once

#include <stdexcept>
#include <string>

namespace bicons {

/// Argument outside the domain of a function (negative xi, rho outside the block, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (eps, C) pair for which no block exists, e.g. eps=+1 with C <= 4/sqrt(3).
class InadmissibleParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation that is meaningful only for some sign of eps.
class NotApplicable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Quadrature, root polishing or an ODE integration did not reach its tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bicons
