#pragma once

#include <stdexcept>
#include <string>

namespace pnes {

/// Violated precondition on an argument (bad occupation, mismatched configs, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested Fock cutoff cannot hold the state to the required tail mass.
class DimensionTooSmallError : public DomainError {
 public:
  DimensionTooSmallError(const std::string& what, double tail_mass)
      : DomainError(what), tail_mass_(tail_mass) {}
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  double tail_mass_;
};

/// A sampled pump profile was queried outside its time support.
class ExtrapolationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntegrationDivergedError : public NumericalError {
 public:
  IntegrationDivergedError(const std::string& what, std::size_t step)
      : NumericalError(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Richardson estimates at h and h/2 disagree beyond the requested tolerance.
class NoisyDerivativeError : public NumericalError {
 public:
  NoisyDerivativeError(const std::string& what, double coarse, double fine)
      : NumericalError(what), coarse_(coarse), fine_(fine) {}
  double coarse_estimate() const noexcept { return coarse_; }
  double fine_estimate() const noexcept { return fine_; }

 private:
  double coarse_;
  double fine_;
};

/// Step-halving local error of the model ODE integrator exceeded its bound.
class StepSizeError : public NumericalError {
 public:
  StepSizeError(const std::string& what, double estimate)
      : NumericalError(what), estimate_(estimate) {}
  double error_estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace pnes
