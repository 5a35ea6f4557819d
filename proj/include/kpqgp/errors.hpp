#pragma once

#include <stdexcept>
#include <string>

namespace kpqgp {

/// A physical-domain violation: negative densities, inadmissible soliton
/// parameters, out-of-range small parameters. The CLI maps these to exit 1.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Soliton parameters for which the closed-form solution is not real.
class NonexistentSolitonError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A soliton was requested from an equation with zero dispersion.
class DispersionlessError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed input data or configuration that violates an operation's
/// precondition (non-periodic field, nonzero x-mean, unstable time step).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bad command line or configuration file. The CLI maps these to exit 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace kpqgp
