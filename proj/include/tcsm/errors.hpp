#pragma once

#include <stdexcept>
#include <string>

namespace tcsm {

/// Input outside an operation's parameter domain (N < 3, beta <= 0, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two particles closer than the representable floor of sin().
class SeparationUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The symmetric factor phi vanishes (numerically) at the configuration.
class NodeProximity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SamplingExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Product of two beta-dependent coefficients was requested.
class CoefficientOverflow : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A polynomial was not divisible by (z_a - z_b).
class NonDivisible : public std::runtime_error {
 public:
  NonDivisible(const std::string& what, std::string remainder)
      : std::runtime_error(what), remainder_(std::move(remainder)) {}
  const std::string& remainder() const noexcept { return remainder_; }

 private:
  std::string remainder_;
};

/// A polynomial expected to lie in a basis span did not.
class ProjectionResidual : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class RankDeficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tcsm
