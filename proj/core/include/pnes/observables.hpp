#pragma once

// Expectation values of the pair operators A = a1 a2, A+ = a1+ a2+,
// N = n1 + n2, the pair-quadratures C+ = A + A+ and C- = (A - A+)/i, the pump
// quadrature Q = a0 + a0+, and the conserved excitation K = n0 + (n1 + n2)/2.
//
// All operators are the truncated (box-projected) ones, matching
// apply_ladder. For states whose cutoff-edge occupancy is negligible the
// values coincide with the infinite-space expectations.

#include <complex>
#include <functional>
#include <vector>

#include "pnes/fock_space.hpp"

namespace pnes {

enum class QuadratureSign { kPlus, kMinus };

/// <A>, <A^2>, <A+ A>, <A A+>: every second-order pair moment.
struct PairMoments {
  Complex a;
  Complex a_squared;
  double adag_a = 0.0;
  double a_adag = 0.0;
};

struct ObservableSet {
  Complex pair_amp;       ///< <A>
  Complex pair_amp_conj;  ///< <A+>
  double total_n = 0.0;   ///< <n1 + n2>
  double diff_n = 0.0;    ///< <n1 - n2>
  Complex pump_amp;       ///< <a0>
  double pump_quad = 0.0; ///< <Q>
  double c_plus = 0.0;    ///< <C+>
  double disp_plus = 0.0;
  double disp_minus = 0.0;
  double conserved_k = 0.0;
  double norm = 0.0;            ///< ||psi||^2
  double edge_occupancy = 0.0;  ///< probability on the last occupation of any truncated mode
};

PairMoments pair_moments(const PureState& s);

Complex expect_pair_amplitude(const PureState& s);
Complex expect_mode_amplitude(const PureState& s, Mode mode);
Complex expect_pump_amplitude(const PureState& s);
double expect_mode_number(const PureState& s, Mode mode);
double expect_total_number(const PureState& s);
double expect_number_difference(const PureState& s);
double expect_pair_quadrature(const PureState& s, QuadratureSign sign);
double pair_quadrature_dispersion(const PureState& s, QuadratureSign sign);
double pump_quadrature(const PureState& s);
double conserved_excitation(const PureState& s);

/// Marginal p(n) of one mode; sums to ||psi||^2.
std::vector<double> photon_number_distribution(const PureState& s, Mode mode);

/// Probability on basis states with n_m = d_m - 1 for some mode with d_m > 1.
double edge_occupancy(const PureState& s);

ObservableSet measure(const PureState& s);

/// Real-valued observable of a state, used by the finite-difference rate estimator.
using ObservableFn = std::function<double(const PureState&)>;

enum class ObservableKind {
  kDispersionPlus,
  kDispersionMinus,
  kPairQuadraturePlus,
  kTotalNumber,
  kNumberDifference,
  kConservedExcitation,
  kPumpQuadrature,
};

ObservableFn observable(ObservableKind kind);

}  // namespace pnes
