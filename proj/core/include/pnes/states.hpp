#pragma once

// Initial states: coherent pump, photon-number entangled pair states
// sum_n c_n |n,n>, and their product with the pump.
//
// Pair states are PureStates with a one-dimensional pump (d0 = 1) and
// d1 = d2 = d; product_state lifts them into the full three-mode space.

#include <cstddef>
#include <span>
#include <vector>

#include "pnes/fock_space.hpp"

namespace pnes {

/// Tail mass above which constructors refuse a cutoff.
inline constexpr double kConstructorTailTolerance = 1e-12;
/// Tail mass above which coherent() flags its result.
inline constexpr double kCoherentWarningTail = 1e-6;

struct TwbParam {
  double x = 0.0;  ///< 0 <= x < 1
  void validate() const;
};

struct TmcParam {
  double lambda = 0.0;  ///< >= 0, the eigenvalue of a1 a2
  void validate() const;
};

struct PnesCoefficients {
  std::vector<Complex> c;  ///< c_n multiplies |n,n>

  /// 1 / sum |c_n|^2. Throws DomainError if every coefficient is zero.
  double normalization() const;
};

struct CoherentAmplitudes {
  std::vector<Complex> amplitudes;  ///< unit norm after truncation
  double tail_mass = 0.0;           ///< probability beyond the cutoff before renormalizing
  bool truncation_warning = false;  ///< tail_mass > kCoherentWarningTail
};

CoherentAmplitudes coherent(double alpha, std::size_t d);

PureState twb(TwbParam x, std::size_t d);
PureState tmc(TmcParam lam, std::size_t d);
PureState pnes(const PnesCoefficients& coeffs, std::size_t d);

/// Modified Bessel function I0 by its power series; supported for 0 <= z <= 60.
double bessel_i0(double z);

/// |pump> (x) |pair>. `pair` must have pump dimension 1.
PureState product_state(std::span<const Complex> pump, const PureState& pair);

// Analytic tail masses beyond cutoff d, and the smallest cutoffs keeping them
// below `tail`.
double coherent_tail_mass(double alpha, std::size_t d);
double twb_tail_mass(double x, std::size_t d);
double tmc_tail_mass(double lambda, std::size_t d);
std::size_t twb_dimension(double x, double tail = kConstructorTailTolerance);
std::size_t tmc_dimension(double lambda, double tail = kConstructorTailTolerance);
/// max(default_pump_dimension(alpha), smallest d with coherent tail < `tail`).
std::size_t pump_dimension(double alpha, double tail = kConstructorTailTolerance);

}  // namespace pnes
