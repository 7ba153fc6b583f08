#pragma once

// Exact three-mode evolution d psi/dt = G psi in the resonant rotating frame,
// with G from apply_interaction_generator, plus a Richardson-extrapolated
// central-difference estimator for d<f>/dt.
//
// Leakage along an evolution is the squared Duhamel bound
//   (integral_0^t ||(1 - P) G psi(s)|| ds)^2,
// an upper bound on the probability the untruncated dynamics would place
// outside the box. The truncated generator is antisymmetric, so the norm
// itself is only changed by integrator error; it is never renormalized.

#include <cstddef>
#include <string>
#include <vector>

#include "pnes/fock_space.hpp"
#include "pnes/observables.hpp"

namespace pnes {

enum class Integrator { kRk4, kTaylor4 };

struct EvolutionSpec {
  HamiltonianParams params;
  double dt = 1e-3;
  std::size_t steps = 0;
  std::size_t record_every = 1;
  Integrator method = Integrator::kRk4;

  void validate() const;
};

struct ExactTrajectory {
  std::vector<double> times;
  std::vector<ObservableSet> observables;
  std::vector<double> leakage_history;  ///< leakage bound at each recorded time
  PureState final_state;
  double norm_drift = 0.0;  ///< max_k | ||psi_k||^2 - ||psi_0||^2 |
  double leakage = 0.0;
  std::vector<std::string> warnings;
};

/// Records observables at step 0, every record_every steps, and the last step.
ExactTrajectory evolve(const PureState& s0, const EvolutionSpec& spec);

/// Evolves by a signed duration in `steps` equal steps without recording.
PureState propagate(const PureState& s0, const HamiltonianParams& params, double duration,
                    std::size_t steps, Integrator method = Integrator::kRk4);

struct RateOptions {
  double h = 0.0;  ///< 0 selects default_rate_step
  double rel_tol = 1e-4;
  double abs_tol = 1e-9;
  std::size_t substeps = 4;  ///< integrator steps per +-h propagation
  Integrator method = Integrator::kRk4;
};

struct RateEstimate {
  double value = 0.0;   ///< Richardson combination (4 D(h/2) - D(h)) / 3
  double coarse = 0.0;  ///< central difference at h
  double fine = 0.0;    ///< central difference at h/2
  double h = 0.0;
};

/// h = 1e-3 / (chi max(1, |<a0>|, <N>)), or 1e-3 when chi = 0.
double default_rate_step(const PureState& s0, const HamiltonianParams& params);

/// d<f>/dt at t = 0. Throws NoisyDerivativeError when |coarse - fine| exceeds
/// max(abs_tol, rel_tol |value|).
RateEstimate rate_of(const PureState& s0, const HamiltonianParams& params, const ObservableFn& f,
                     const RateOptions& options = {});

}  // namespace pnes
