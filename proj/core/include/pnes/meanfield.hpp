#pragma once

// Mean-field model of pair generation with a prescribed real pump profile a(t):
//
//   dLambda/dt = chi (N + 1) a(t),   dN/dt = 4 chi Lambda a(t),
//
// started from (Lambda, N) = (0, 0) before the pump switches on. Its solution
// depends on a(t) only through tau(t) = chi * integral_{-inf}^t a:
//
//   Lambda = sinh(tau) cosh(tau),   N = 2 sinh^2(tau).

#include <cstddef>
#include <variant>
#include <vector>

namespace pnes {

class PumpProfile {
 public:
  /// a(t) = a for t >= 0, zero before.
  struct Constant {
    double amplitude;
  };
  /// a(t) = a for 0 <= t < T, zero elsewhere.
  struct Rectangular {
    double amplitude;
    double duration;
  };
  /// a(t) = peak * exp(-(t - center)^2 / (2 width^2)).
  struct Gaussian {
    double peak;
    double center;
    double width;
  };
  /// Piecewise-linear interpolation of samples; undefined outside [times.front(), times.back()].
  struct Sampled {
    std::vector<double> times;
    std::vector<double> values;
  };
  using Variant = std::variant<Constant, Rectangular, Gaussian, Sampled>;

  /// Throws DomainError when the profile invariants fail.
  explicit PumpProfile(Variant v);

  static PumpProfile constant(double a) { return PumpProfile(Constant{a}); }
  static PumpProfile rectangular(double a, double duration) {
    return PumpProfile(Rectangular{a, duration});
  }
  static PumpProfile gaussian(double peak, double center, double width) {
    return PumpProfile(Gaussian{peak, center, width});
  }
  static PumpProfile sampled(std::vector<double> times, std::vector<double> values) {
    return PumpProfile(Sampled{std::move(times), std::move(values)});
  }

  const Variant& variant() const noexcept { return v_; }

  /// a(t). Sampled profiles throw ExtrapolationError outside their support.
  double amplitude(double t) const;
  /// a(t) on the smooth piece covering (lo, hi), evaluated as a one-sided
  /// limit at the ends. (lo, hi) must not contain a breakpoint.
  double amplitude_within(double t, double lo, double hi) const;
  /// integral_{-inf}^t a(t') dt'.
  double area(double t) const;
  /// Largest |a(t)| over all t.
  double peak_magnitude() const;
  /// Times where a(t) is not smooth, in increasing order.
  std::vector<double> breakpoints() const;

 private:
  Variant v_;
};

struct ModelPoint {
  double lambda = 0.0;
  double n = 0.0;
};

struct ModelTrajectory {
  enum class Source { kClosedForm, kOde };

  std::vector<double> times;
  std::vector<double> tau;
  std::vector<double> lambda;
  std::vector<double> n;
  Source source = Source::kClosedForm;
};

struct ModelIntegrationOptions {
  /// Largest RK4 substep; 0 selects 2e-3 / (chi * peak |a|).
  double max_substep = 0.0;
  /// Bound on the step-halving error estimate per grid interval.
  double tolerance = 1e-8;
};

/// chi * integral_{-inf}^t a. Closed form for constant/rectangular, adaptive
/// Simpson (absolute tolerance 1e-12) for gaussian/sampled.
double tau_of_t(const PumpProfile& p, double chi, double t);

ModelPoint closed_form(double tau);

/// Closed-form trajectory on a grid via tau_of_t.
ModelTrajectory closed_form_trajectory(const PumpProfile& p, double chi, const std::vector<double>& t_grid);

/// RK4 integration of the model ODEs from (0, 0) at t_grid.front(). Each grid
/// interval is split at profile breakpoints and integrated with n and 2n
/// substeps; StepSizeError when the two differ by more than options.tolerance.
ModelTrajectory integrate_model(const PumpProfile& p, double chi, const std::vector<double>& t_grid,
                                const ModelIntegrationOptions& options = {});

/// x = tanh(tau): the twin-beam parameter whose <A> and <N> equal closed_form(tau).
double twb_x_from_tau(double tau);

/// (N + 1)^2 - 4 Lambda^2, equal to 1 along every model trajectory.
double first_integral(double lambda, double n);

/// N implied by Lambda through the first integral: sqrt(1 + 4 Lambda^2) - 1.
double model_number_from_pair_amplitude(double lambda);

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
template <typename Fn>
double adaptive_simpson(Fn&& f, double a, double b, double tol, int max_depth = 50);

}  // namespace pnes

#include "pnes/detail/adaptive_simpson.hpp"
