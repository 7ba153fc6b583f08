#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "pnes/meanfield.hpp"
#include "pnes/observables.hpp"
#include "pnes/states.hpp"

namespace pnes {
namespace {

PureState with_vacuum_pump(const PureState& pair) {
  return product_state(coherent(0.0, 1).amplitudes, pair);
}

PureState twb_state(double x) { return twb(TwbParam{x}, twb_dimension(x)); }
PureState tmc_state(double lam) { return tmc(TmcParam{lam}, tmc_dimension(lam)); }

TEST(PairAmplitude, TwbMatchesSeries) {
  for (double x : {0.1, 0.5, 0.7}) {
    const auto sums = testing::twb_series(x);
    EXPECT_NEAR(sums.pair_amp, x / (1.0 - x * x), 1e-13);
    EXPECT_NEAR(expect_pair_amplitude(with_vacuum_pump(twb_state(x))).real(), sums.pair_amp, 1e-10) << x;
  }
}

TEST(PairAmplitude, TmcEigenvalue) {
  for (double lam : {0.5, 1.0, 2.0}) {
    const auto s = product_state(coherent(1.0, 14).amplitudes, tmc_state(lam));
    EXPECT_NEAR(expect_pair_amplitude(s).real(), lam, 1e-10);
    EXPECT_NEAR(expect_pair_amplitude(s).imag(), 0.0, 1e-15);
  }
}

TEST(PairAmplitude, SingleFockPairIsZero) {
  const TruncationConfig cfg(2, 5, 5);
  EXPECT_EQ(expect_pair_amplitude(PureState::basis(cfg, {1, 3, 3})), Complex(0.0));
}

TEST(Numbers, TwbAndTmc) {
  const auto t = twb_state(0.5);
  EXPECT_NEAR(expect_total_number(t), 2.0 / 3.0, 1e-10);
  EXPECT_EQ(expect_number_difference(t), 0.0);
  EXPECT_EQ(expect_number_difference(tmc_state(1.0)), 0.0);
}

TEST(Numbers, FockState) {
  const TruncationConfig cfg(1, 4, 2);
  const auto s = PureState::basis(cfg, {0, 3, 1});
  EXPECT_EQ(expect_total_number(s), 4.0);
  EXPECT_EQ(expect_number_difference(s), 2.0);
}

TEST(Dispersion, PairVacuumIsOne) {
  const auto s = twb(TwbParam{0.0}, 3);
  EXPECT_NEAR(pair_quadrature_dispersion(s, QuadratureSign::kPlus), 1.0, 1e-15);
  EXPECT_NEAR(pair_quadrature_dispersion(s, QuadratureSign::kMinus), 1.0, 1e-15);
}

TEST(Dispersion, TwbClosedForm) {
  // Brute-force <C+^2> - <C+>^2 from the series coefficients c_n = sqrt(1-x^2) x^n.
  const double x = 0.5;
  double a = 0.0, a2 = 0.0, ada = 0.0, aad = 0.0;
  for (int n = 0; n < 400; ++n) {
    const double cn = std::sqrt(1.0 - x * x) * std::pow(x, n);
    const double cn1 = cn * x, cn2 = cn * x * x;
    a += (n + 1.0) * cn * cn1;
    a2 += (n + 1.0) * (n + 2.0) * cn * cn2;
    ada += double(n) * n * cn * cn;
    aad += (n + 1.0) * (n + 1.0) * cn * cn;
  }
  const double brute = 2.0 * a2 + ada + aad - 4.0 * a * a;
  EXPECT_NEAR(brute, 25.0 / 9.0, 1e-12);
  const auto s = twb(TwbParam{x}, twb_dimension(x, 1e-20));
  EXPECT_NEAR(pair_quadrature_dispersion(s, QuadratureSign::kPlus), brute, 1e-10);
}

TEST(Dispersion, TwbMinusQuadratureIsVacuumLevel) {
  // <A+A> + <AA+> = ((1 + x^2)/(1 - x^2))^2 and 2<A^2> = 4x^2/(1 - x^2)^2 cancel down to 1.
  for (double x : {0.2, 0.5, 0.8}) {
    const auto s = twb(TwbParam{x}, twb_dimension(x, 1e-20));
    EXPECT_NEAR(pair_quadrature_dispersion(s, QuadratureSign::kMinus), 1.0, 1e-9) << x;
  }
}

TEST(Dispersion, TmcEqualsMeanNumberPlusOne) {
  for (double lam : {0.5, 1.0}) {
    const auto s = tmc(TmcParam{lam}, tmc_dimension(lam, 1e-20));
    EXPECT_NEAR(pair_quadrature_dispersion(s, QuadratureSign::kPlus), expect_total_number(s) + 1.0, 1e-10);
  }
}

TEST(PumpQuadrature, Coherent) {
  const auto s = product_state(coherent(1.5, pump_dimension(1.5)).amplitudes, twb_state(0.3));
  EXPECT_NEAR(pump_quadrature(s), 3.0, 1e-10);
  EXPECT_EQ(pump_quadrature(with_vacuum_pump(twb_state(0.3))), 0.0);
  const auto two = product_state(coherent(2.0, pump_dimension(2.0)).amplitudes, tmc_state(1.0));
  EXPECT_NEAR(pump_quadrature(two), 4.0, 1e-10);
}

TEST(ConservedExcitation, Examples) {
  const TruncationConfig cfg(2, 2, 2);
  EXPECT_EQ(conserved_excitation(PureState::basis(cfg, {1, 0, 0})), 1.0);
  EXPECT_EQ(conserved_excitation(PureState::basis(cfg, {0, 1, 1})), 1.0);
  const auto s = product_state(coherent(2.0, pump_dimension(2.0)).amplitudes, twb(TwbParam{0.0}, 2));
  EXPECT_NEAR(conserved_excitation(s), 4.0, 1e-10);
}

TEST(PhotonNumberDistribution, Marginals) {
  const double lam = 1.3;
  const auto s = tmc_state(lam);
  const auto p = photon_number_distribution(s, Mode::kIdler);
  const double i0 = testing::bessel_i0_quadrature(2.0 * lam);
  double fact = 1.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (n > 0) fact *= static_cast<double>(n);
    EXPECT_NEAR(p[n], std::pow(lam, 2.0 * n) / (fact * fact * i0), 1e-12) << n;
  }

  const auto vac = photon_number_distribution(PureState::basis(TruncationConfig(3, 3, 3), {0, 0, 0}), Mode::kPump);
  EXPECT_EQ(vac, (std::vector<double>{1.0, 0.0, 0.0}));
}

TEST(PhotonNumberDistribution, SumsToNorm) {
  std::mt19937_64 rng(17);
  const TruncationConfig cfg(3, 4, 5);
  auto s = testing::random_state(cfg, rng);
  for (auto& a : s.amplitudes) a *= 0.5;
  for (Mode m : {Mode::kPump, Mode::kSignal, Mode::kIdler}) {
    double sum = 0.0;
    for (double v : photon_number_distribution(s, m)) sum += v;
    EXPECT_NEAR(sum, 0.25, 1e-14);
  }
}

TEST(EdgeOccupancy, CountsLastLevels) {
  const TruncationConfig cfg(1, 3, 3);
  EXPECT_EQ(edge_occupancy(PureState::basis(cfg, {0, 2, 0})), 1.0);
  EXPECT_EQ(edge_occupancy(PureState::basis(cfg, {0, 1, 1})), 0.0);
  EXPECT_LT(edge_occupancy(twb_state(0.6)), 1e-12);
}

// Properties.

TEST(ObservableProperties, DispersionsNonnegative) {
  std::mt19937_64 rng(23);
  const TruncationConfig cfg(3, 5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = testing::random_state(cfg, rng);
    EXPECT_GE(pair_quadrature_dispersion(s, QuadratureSign::kPlus), -1e-12);
    EXPECT_GE(pair_quadrature_dispersion(s, QuadratureSign::kMinus), -1e-12);
  }
  for (double x : {0.0, 0.3, 0.8}) {
    const auto s = twb(TwbParam{x}, twb_dimension(x) + 1);
    EXPECT_GT(pair_quadrature_dispersion(s, QuadratureSign::kMinus), 0.0);
  }
}

TEST(ObservableProperties, PnesModeAmplitudesVanish) {
  const auto pump = coherent(1.2, pump_dimension(1.2)).amplitudes;
  for (const auto& pair : {twb_state(0.4), tmc_state(0.9), pnes(PnesCoefficients{{0.5, -0.3, 0.1}}, 4)}) {
    const auto s = product_state(pump, pair);
    EXPECT_EQ(expect_mode_amplitude(s, Mode::kSignal), Complex(0.0));
    EXPECT_EQ(expect_mode_amplitude(s, Mode::kIdler), Complex(0.0));
  }
}

TEST(ObservableProperties, TwbSatisfiesModelFirstIntegral) {
  for (double x : {0.1, 0.3, 0.5, 0.7}) {
    const auto s = twb(TwbParam{x}, twb_dimension(x, 1e-16));
    const double a = expect_pair_amplitude(s).real();
    EXPECT_NEAR(expect_total_number(s), model_number_from_pair_amplitude(a), 1e-10) << x;
  }
}

TEST(ObservableProperties, TmcViolatesModelFirstIntegral) {
  const auto s = tmc_state(1.0);
  const double a = expect_pair_amplitude(s).real();
  EXPECT_GT(std::abs(expect_total_number(s) - model_number_from_pair_amplitude(a)), 1e-3);
}

TEST(ObservableProperties, MatrixFreeMatchesDenseOnSmallBox) {
  std::mt19937_64 rng(2024);
  const TruncationConfig cfg(3, 4, 4);
  const testing::DenseOperators ops(cfg);
  const testing::Matrix a = ops.pair();
  const testing::Matrix ad = a.adjoint();
  const testing::Matrix c_plus = a + ad;
  const testing::Matrix c_minus = (a - ad) / Complex(0.0, 1.0);
  const testing::Matrix q = ops.a0 + ops.a0.adjoint();
  const testing::Matrix n0 = ops.a0.adjoint() * ops.a0;
  const testing::Matrix n1 = ops.a1.adjoint() * ops.a1;
  const testing::Matrix n2 = ops.a2.adjoint() * ops.a2;

  for (int trial = 0; trial < 20; ++trial) {
    const auto s = testing::random_state(cfg, rng);
    const auto v = testing::to_vector(s);
    auto dense = [&](const testing::Matrix& m) { return testing::expectation(v, m); };
    const ObservableSet o = measure(s);

    EXPECT_LT(std::abs(o.pair_amp - dense(a)), 1e-12);
    EXPECT_LT(std::abs(o.pair_amp_conj - dense(ad)), 1e-12);
    EXPECT_NEAR(o.total_n, dense(n1 + n2).real(), 1e-12);
    EXPECT_NEAR(o.diff_n, dense(n1 - n2).real(), 1e-12);
    EXPECT_LT(std::abs(o.pump_amp - dense(ops.a0)), 1e-12);
    EXPECT_NEAR(o.pump_quad, dense(q).real(), 1e-12);
    EXPECT_NEAR(o.c_plus, dense(c_plus).real(), 1e-12);
    const double dp = dense(c_plus * c_plus).real() - std::pow(dense(c_plus).real(), 2);
    const double dm = dense(c_minus * c_minus).real() - std::pow(dense(c_minus).real(), 2);
    EXPECT_NEAR(o.disp_plus, dp, 1e-12);
    EXPECT_NEAR(o.disp_minus, dm, 1e-12);
    EXPECT_NEAR(pair_quadrature_dispersion(s, QuadratureSign::kPlus), dp, 1e-12);
    EXPECT_NEAR(o.conserved_k, dense(n0 + 0.5 * (n1 + n2)).real(), 1e-12);

    const PairMoments m = pair_moments(s);
    EXPECT_LT(std::abs(m.a_squared - dense(a * a)), 1e-12);
    EXPECT_NEAR(m.adag_a, dense(ad * a).real(), 1e-12);
    EXPECT_NEAR(m.a_adag, dense(a * ad).real(), 1e-12);
  }
}

TEST(ObservableSelector, DispatchesToNamedObservables) {
  const auto s = product_state(coherent(1.0, pump_dimension(1.0)).amplitudes, twb_state(0.3));
  EXPECT_EQ(observable(ObservableKind::kDispersionPlus)(s), pair_quadrature_dispersion(s, QuadratureSign::kPlus));
  EXPECT_EQ(observable(ObservableKind::kTotalNumber)(s), expect_total_number(s));
  EXPECT_EQ(observable(ObservableKind::kConservedExcitation)(s), conserved_excitation(s));
  EXPECT_EQ(observable(ObservableKind::kPumpQuadrature)(s), pump_quadrature(s));
}

}  // namespace
}  // namespace pnes
