#include "pnes/dispersion.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pnes/errors.hpp"
#include "pnes/observables.hpp"

namespace pnes {

namespace {

void validate_point(StateFamily family, double param, double chi, double alpha) {
  if (family == StateFamily::kTwb) {
    TwbParam{param}.validate();
  } else {
    TmcParam{param}.validate();
  }
  if (!std::isfinite(chi) || chi < 0.0) throw DomainError("chi must be finite and nonnegative");
  if (!std::isfinite(alpha) || alpha < 0.0) throw DomainError("alpha must be finite and nonnegative");
}

}  // namespace

std::string to_string(StateFamily f) { return f == StateFamily::kTwb ? "twb" : "tmc"; }

StateFamily parse_state_family(const std::string& name) {
  if (name == "twb") return StateFamily::kTwb;
  if (name == "tmc") return StateFamily::kTmc;
  throw DomainError("unknown state family '" + name + "' (expected twb or tmc)");
}

double closed_form_rate(StateFamily family, RateSide side, double param, double chi, double alpha) {
  validate_point(family, param, chi, alpha);
  if (family == StateFamily::kTwb) {
    const double x = param;
    const double q = 1.0 - x * x;
    return 8.0 * chi * alpha * x * (1.0 + x * x) / (q * q);
  }
  return (side == RateSide::kExact ? 8.0 : 4.0) * chi * param * alpha;
}

double model_rate_from_trajectory(StateFamily family, double param, double chi, double alpha) {
  validate_point(family, param, chi, alpha);
  if (family == StateFamily::kTwb) {
    // D(x) = ((1 + x^2)/(1 - x^2))^2 along x = tanh(tau), dtau/dt = chi alpha.
    const double x = param;
    const double q = 1.0 - x * x;
    const double dd_dx = 8.0 * x * (1.0 + x * x) / (q * q * q);
    const double dx_dt = chi * alpha * q;
    return dd_dx * dx_dt;
  }
  // D = N + 1 with dN/dt = 4 chi Lambda alpha and Lambda = lambda.
  return 4.0 * chi * param * alpha;
}

PureState initial_state(StateFamily family, double param, double alpha, const TruncationConfig& trunc) {
  validate_point(family, param, 0.0, alpha);
  if (trunc.signal_dim() != trunc.idler_dim()) {
    throw DomainError("pair states need equal signal and idler cutoffs");
  }
  const std::size_t d = trunc.signal_dim();
  const double pump_tail = coherent_tail_mass(alpha, trunc.pump_dim());
  if (pump_tail > kDispersionTailLimit) {
    std::ostringstream msg;
    msg << "pump cutoff " << trunc.pump_dim() << " leaves coherent tail " << pump_tail;
    throw DimensionTooSmallError(msg.str(), pump_tail);
  }
  const PureState pair = family == StateFamily::kTwb ? twb(TwbParam{param}, d) : tmc(TmcParam{param}, d);
  const CoherentAmplitudes pump = coherent(alpha, trunc.pump_dim());
  return product_state(pump.amplitudes, pair);
}

TruncationConfig default_truncation(StateFamily family, double param, double alpha, double tail) {
  const std::size_t pair_dim =
      family == StateFamily::kTwb ? twb_dimension(param, tail) : tmc_dimension(param, tail);
  const std::size_t d = std::max<std::size_t>(pair_dim, 2);
  return TruncationConfig(pump_dimension(alpha, tail), d, d);
}

double exact_rate_fd(StateFamily family, double param, double chi, double alpha,
                     const TruncationConfig& trunc, const RateOptions& options) {
  validate_point(family, param, chi, alpha);
  const PureState s0 = initial_state(family, param, alpha, trunc);
  return rate_of(s0, HamiltonianParams{chi}, observable(ObservableKind::kDispersionPlus), options).value;
}

double diagnostic_simple_rate(const PureState& s, double chi) {
  return 2.0 * chi * pump_quadrature(s) * expect_pair_quadrature(s, QuadratureSign::kPlus);
}

DispersionReport build_report(StateFamily family, double param, double chi, double alpha,
                              const TruncationConfig& trunc) {
  validate_point(family, param, chi, alpha);
  const PureState s0 = initial_state(family, param, alpha, trunc);

  DispersionReport r;
  r.state_family = family;
  r.state_param = param;
  r.chi = chi;
  r.alpha = alpha;
  r.rate_exact_fd =
      rate_of(s0, HamiltonianParams{chi}, observable(ObservableKind::kDispersionPlus)).value;
  r.rate_closed_exact = closed_form_rate(family, RateSide::kExact, param, chi, alpha);
  r.rate_closed_model = closed_form_rate(family, RateSide::kModel, param, chi, alpha);
  r.rate_model_chain = model_rate_from_trajectory(family, param, chi, alpha);
  r.rate_diag_simple = diagnostic_simple_rate(s0, chi);

  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  r.ratios_defined = r.rate_closed_exact != 0.0 && r.rate_model_chain != 0.0;
  r.rel_err_exact = r.rate_closed_exact != 0.0
                        ? std::abs(r.rate_exact_fd - r.rate_closed_exact) / std::abs(r.rate_closed_exact)
                        : kNaN;
  r.model_exact_ratio = r.rate_model_chain != 0.0 ? r.rate_exact_fd / r.rate_model_chain : kNaN;
  return r;
}

DispersionReport build_report(StateFamily family, double param, double chi, double alpha) {
  validate_point(family, param, chi, alpha);
  return build_report(family, param, chi, alpha, default_truncation(family, param, alpha));
}

}  // namespace pnes
