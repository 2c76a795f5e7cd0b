#pragma once

#include <stdexcept>
#include <string>

namespace cnoidal {

/// Input outside the mathematical domain of an operation (vanishing
/// denominator, negative radicand, m outside its range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller misuse of an API (bad order, wrong family for a check, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A residual term lacked the sn*dn prefactor. Indicates an algebra bug.
class FactorizationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The forced-vanishing chain could not be continued.
class ChainBrokenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConstraintError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnderdeterminedError : public std::invalid_argument {
 public:
  UnderdeterminedError(const std::string& what, int deficit)
      : std::invalid_argument(what), deficit_(deficit) {}
  int deficit() const noexcept { return deficit_; }

 private:
  int deficit_;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Divergence : public SolverError {
 public:
  Divergence(const std::string& what, int iterations)
      : SolverError(what), iterations_(iterations) {}
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

class SingularJacobian : public SolverError {
 public:
  SingularJacobian(const std::string& what, double condition)
      : SolverError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace cnoidal
