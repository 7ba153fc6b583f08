#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pnes/errors.hpp"
#include "pnes/meanfield.hpp"

namespace pnes {
namespace {

std::vector<double> grid(double t0, double t1, std::size_t n) {
  std::vector<double> g(n + 1);
  for (std::size_t k = 0; k <= n; ++k) g[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n);
  return g;
}

TEST(Tau, RectangularPulse) {
  const auto p = PumpProfile::rectangular(2.0, 1.0);
  EXPECT_EQ(tau_of_t(p, 0.1, -0.5), 0.0);
  EXPECT_NEAR(tau_of_t(p, 0.1, 0.5), 0.1, 1e-15);
  EXPECT_NEAR(tau_of_t(p, 0.1, 3.0), 0.2, 1e-15);
  EXPECT_EQ(tau_of_t(p, 0.1, -std::numeric_limits<double>::infinity()), 0.0);
}

TEST(Tau, ConstantIsLinearAfterSwitchOn) {
  const auto p = PumpProfile::constant(3.0);
  EXPECT_EQ(tau_of_t(p, 0.05, -1.0), 0.0);
  EXPECT_NEAR(tau_of_t(p, 0.05, 2.0), 0.3, 1e-15);
}

TEST(Tau, GaussianMatchesErf) {
  const double peak = 1.5, c = 4.0, w = 0.7, chi = 0.2;
  const auto p = PumpProfile::gaussian(peak, c, w);
  const double total = peak * w * std::sqrt(2.0 * std::acos(-1.0));
  for (double t : {1.0, 3.5, 4.0, 5.2, 20.0}) {
    const double expected = chi * 0.5 * total * (1.0 + std::erf((t - c) / (w * std::sqrt(2.0))));
    EXPECT_NEAR(tau_of_t(p, chi, t), expected, 1e-12) << t;
  }
}

TEST(Tau, SampledTrapezoid) {
  const auto p = PumpProfile::sampled({0.0, 1.0, 3.0}, {0.0, 2.0, 0.0});
  EXPECT_NEAR(tau_of_t(p, 1.0, 1.0), 1.0, 1e-13);
  EXPECT_NEAR(tau_of_t(p, 1.0, 3.0), 3.0, 1e-13);
  EXPECT_NEAR(tau_of_t(p, 0.5, 2.0), 0.5 * (1.0 + 1.5), 1e-13);
  EXPECT_THROW(tau_of_t(p, 1.0, 3.5), ExtrapolationError);
  EXPECT_THROW(p.amplitude(-0.1), ExtrapolationError);
}

TEST(ClosedForm, Examples) {
  const auto m = closed_form(0.5);
  EXPECT_NEAR(m.lambda, 0.587600596821900728, 1e-15);
  EXPECT_NEAR(m.n, 0.543080634815243778, 1e-15);
  EXPECT_NEAR(twb_x_from_tau(0.5), 0.462117157260009758, 1e-15);
  EXPECT_EQ(closed_form(0.0).lambda, 0.0);
  EXPECT_EQ(closed_form(0.0).n, 0.0);
}

TEST(ClosedForm, FirstIntegralAndIdentity) {
  for (double tau = 0.0; tau <= 2.0; tau += 0.125) {
    const auto m = closed_form(tau);
    EXPECT_NEAR(first_integral(m.lambda, m.n), 1.0, 1e-10) << tau;
    EXPECT_NEAR(model_number_from_pair_amplitude(m.lambda), m.n, 1e-10) << tau;
  }
}

TEST(ClosedFormTrajectory, FollowsTau) {
  const auto p = PumpProfile::rectangular(1.0, 2.0);
  const auto traj = closed_form_trajectory(p, 0.5, {-1.0, 0.0, 1.0, 2.0, 3.0});
  EXPECT_EQ(traj.source, ModelTrajectory::Source::kClosedForm);
  EXPECT_EQ(traj.tau, (std::vector<double>{0.0, 0.0, 0.5, 1.0, 1.0}));
  EXPECT_EQ(traj.n[2], closed_form(0.5).n);
}

TEST(IntegrateModel, RectangularMatchesClosedForm) {
  // chi a T = 2 spans tau in [0, 2].
  const auto p = PumpProfile::rectangular(4.0, 1.0);
  const auto g = grid(-0.25, 1.5, 70);
  const auto ode = integrate_model(p, 0.5, g);
  EXPECT_EQ(ode.source, ModelTrajectory::Source::kOde);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto m = closed_form(tau_of_t(p, 0.5, g[k]));
    EXPECT_NEAR(ode.lambda[k], m.lambda, 1e-8) << g[k];
    EXPECT_NEAR(ode.n[k], m.n, 1e-8) << g[k];
    EXPECT_NEAR(ode.tau[k], tau_of_t(p, 0.5, g[k]), 1e-12);
  }
}

TEST(IntegrateModel, GaussianMatchesClosedForm) {
  const double w = 0.3, c = 4.0, chi = 0.5;
  const double peak = 2.0 / (chi * w * std::sqrt(2.0 * std::acos(-1.0)));
  const auto p = PumpProfile::gaussian(peak, c, w);
  const auto g = grid(0.0, 8.0, 160);
  const auto ode = integrate_model(p, chi, g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto m = closed_form(tau_of_t(p, chi, g[k]));
    EXPECT_NEAR(ode.lambda[k], m.lambda, 1e-8) << g[k];
    EXPECT_NEAR(ode.n[k], m.n, 1e-8) << g[k];
  }
  EXPECT_NEAR(ode.tau.back(), 2.0, 1e-10);
}

TEST(IntegrateModel, SampledMatchesClosedForm) {
  const auto p = PumpProfile::sampled({0.0, 0.5, 1.0, 2.0}, {0.0, 3.0, 1.0, 0.0});
  const auto g = grid(0.0, 2.0, 9);
  const auto ode = integrate_model(p, 0.4, g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_NEAR(ode.n[k], closed_form(tau_of_t(p, 0.4, g[k])).n, 1e-9) << g[k];
  }
}

TEST(IntegrateModel, StepSizeError) {
  ModelIntegrationOptions opt;
  opt.max_substep = 0.5;
  EXPECT_THROW(integrate_model(PumpProfile::constant(1.0), 1.0, {0.0, 2.0}, opt), StepSizeError);
  opt.tolerance = 1.0;
  EXPECT_NO_THROW(integrate_model(PumpProfile::constant(1.0), 1.0, {0.0, 2.0}, opt));
}

TEST(IntegrateModel, RejectsBadGrids) {
  const auto p = PumpProfile::rectangular(1.0, 1.0);
  EXPECT_THROW(integrate_model(p, 0.1, {}), DomainError);
  EXPECT_THROW(integrate_model(p, 0.1, {0.0, 0.5, 0.5}), DomainError);
  EXPECT_THROW(integrate_model(p, 0.1, {0.5, 1.0}), DomainError);  // pump already on
  EXPECT_THROW(integrate_model(p, -0.1, {0.0, 1.0}), DomainError);
}

TEST(PumpProfile, Validation) {
  EXPECT_THROW(PumpProfile::rectangular(1.0, 0.0), DomainError);
  EXPECT_THROW(PumpProfile::gaussian(1.0, 0.0, -1.0), DomainError);
  EXPECT_THROW(PumpProfile::sampled({0.0}, {1.0}), DomainError);
  EXPECT_THROW(PumpProfile::sampled({0.0, 1.0}, {1.0}), DomainError);
  EXPECT_THROW(PumpProfile::sampled({0.0, 0.0}, {1.0, 1.0}), DomainError);
  EXPECT_THROW(PumpProfile::constant(std::nan("")), DomainError);
}

TEST(PumpProfile, AmplitudeAndBreakpoints) {
  const auto r = PumpProfile::rectangular(2.0, 1.0);
  EXPECT_EQ(r.amplitude(0.0), 2.0);
  EXPECT_EQ(r.amplitude(1.0), 0.0);
  EXPECT_EQ(r.amplitude_within(1.0, 0.5, 1.0), 2.0);
  EXPECT_EQ(r.breakpoints(), (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(PumpProfile::constant(-3.0).peak_magnitude(), 3.0);
  EXPECT_TRUE(PumpProfile::gaussian(1.0, 0.0, 1.0).breakpoints().empty());
}

TEST(AdaptiveSimpson, MatchesErf) {
  auto f = [](double u) { return std::exp(-u * u); };
  const double expected = 0.5 * std::sqrt(std::acos(-1.0)) * (std::erf(2.0) - std::erf(-1.0));
  EXPECT_NEAR(adaptive_simpson(f, -1.0, 2.0, 1e-13), expected, 1e-12);
  EXPECT_EQ(adaptive_simpson(f, 1.0, 1.0, 1e-12), 0.0);
}

// Properties.

TEST(ModelProperties, GaussianWidthIndependence) {
  // Equal-area pulses of different widths end at the same model state.
  const double chi = 0.3, area = 1.5 / chi;
  for (double w : {0.1, 0.5, 2.0}) {
    const double peak = area / (w * std::sqrt(2.0 * std::acos(-1.0)));
    const auto p = PumpProfile::gaussian(peak, 0.0, w);
    const auto ode = integrate_model(p, chi, {-15.0 * w, 15.0 * w});
    EXPECT_NEAR(ode.n.back(), closed_form(1.5).n, 1e-8) << w;
    EXPECT_NEAR(ode.lambda.back(), closed_form(1.5).lambda, 1e-8) << w;
  }
}

TEST(ModelProperties, FirstIntegralAlongOde) {
  const auto p = PumpProfile::sampled({0.0, 1.0, 2.0, 3.0}, {0.0, 2.0, -1.0, 0.5});
  const auto ode = integrate_model(p, 0.7, grid(0.0, 3.0, 30));
  for (std::size_t k = 0; k < ode.times.size(); ++k) {
    EXPECT_NEAR(first_integral(ode.lambda[k], ode.n[k]), 1.0, 1e-10) << ode.times[k];
  }
}

TEST(ModelProperties, NegativeAreaGivesNegativeLambda) {
  const auto m = closed_form(-0.4);
  EXPECT_LT(m.lambda, 0.0);
  EXPECT_EQ(m.n, closed_form(0.4).n);
}

}  // namespace
}  // namespace pnes
