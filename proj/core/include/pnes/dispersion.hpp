#pragma once

// Rate of change of the pair-quadrature dispersion D_{C+} at the instant the
// pair state is a named photon-number entangled state and the pump is
// coherent(alpha):
//
//   * exact side: finite-difference derivative of D_{C+} along the full
//     three-mode evolution (the ground truth),
//   * model side: chain rule through the mean-field solution,
//   * reference closed forms for both sides,
//   * the simple estimate 2 chi <Q> <C+>, kept only as a diagnostic.

#include <string>

#include "pnes/fock_space.hpp"
#include "pnes/propagator.hpp"
#include "pnes/states.hpp"

namespace pnes {

/// Tail mass targeted by default_truncation.
inline constexpr double kDefaultDispersionTail = 1e-13;
/// Largest tail mass initial_state accepts for either factor.
inline constexpr double kDispersionTailLimit = 1e-10;

enum class StateFamily { kTwb, kTmc };
enum class RateSide { kExact, kModel };

std::string to_string(StateFamily f);
/// Throws DomainError for names other than "twb" and "tmc".
StateFamily parse_state_family(const std::string& name);

struct DispersionReport {
  StateFamily state_family = StateFamily::kTwb;
  double state_param = 0.0;
  double chi = 0.0;
  double alpha = 0.0;
  double rate_exact_fd = 0.0;
  double rate_closed_exact = 0.0;
  double rate_closed_model = 0.0;
  double rate_model_chain = 0.0;
  double rate_diag_simple = 0.0;
  /// |rate_exact_fd - rate_closed_exact| / |rate_closed_exact|; NaN when the reference is 0.
  double rel_err_exact = 0.0;
  /// rate_exact_fd / rate_model_chain; NaN when the model rate is 0.
  double model_exact_ratio = 0.0;
  /// False when the reference rates vanish and the ratios above are undefined.
  bool ratios_defined = true;
};

/// Closed-form dD_{C+}/dt:
///   twb (both sides): 8 chi alpha x (1 + x^2) / (1 - x^2)^2
///   tmc exact: 8 chi lambda alpha,  tmc model: 4 chi lambda alpha
double closed_form_rate(StateFamily family, RateSide side, double param, double chi, double alpha);

/// dD/dt from the model: D as a function of the state parameters, differentiated
/// along dN/dt = 4 chi Lambda a with a = alpha. twb: D = (N + 1)^2 with
/// N + 1 = (1 + x^2)/(1 - x^2), Lambda = x/(1 - x^2); tmc: D = N + 1, Lambda = lambda.
double model_rate_from_trajectory(StateFamily family, double param, double chi, double alpha);

/// coherent(alpha) (x) family(param) on `trunc`. Throws DimensionTooSmallError
/// when either factor's tail mass exceeds 1e-10.
PureState initial_state(StateFamily family, double param, double alpha, const TruncationConfig& trunc);

/// Pump and pair cutoffs holding both tails below `tail`.
TruncationConfig default_truncation(StateFamily family, double param, double alpha,
                                    double tail = kDefaultDispersionTail);

double exact_rate_fd(StateFamily family, double param, double chi, double alpha,
                     const TruncationConfig& trunc, const RateOptions& options = {});

/// 2 chi <Q> <C+>.
double diagnostic_simple_rate(const PureState& s, double chi);

DispersionReport build_report(StateFamily family, double param, double chi, double alpha,
                              const TruncationConfig& trunc);
DispersionReport build_report(StateFamily family, double param, double chi, double alpha);

}  // namespace pnes
