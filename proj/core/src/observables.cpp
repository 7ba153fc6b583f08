#include "pnes/observables.hpp"

#include <cmath>

#include "pnes/errors.hpp"

namespace pnes {

namespace {

template <typename Fn>
double diagonal_sum(const PureState& s, Fn weight) {
  const auto& cfg = s.config;
  const std::size_t d0 = cfg.pump_dim(), d1 = cfg.signal_dim(), d2 = cfg.idler_dim();
  double acc = 0.0;
  std::size_t i = 0;
  for (std::size_t n0 = 0; n0 < d0; ++n0) {
    for (std::size_t n1 = 0; n1 < d1; ++n1) {
      for (std::size_t n2 = 0; n2 < d2; ++n2, ++i) {
        acc += weight(n0, n1, n2) * std::norm(s.amplitudes[i]);
      }
    }
  }
  return acc;
}

}  // namespace

PairMoments pair_moments(const PureState& s) {
  const auto& cfg = s.config;
  const std::size_t d0 = cfg.pump_dim(), d1 = cfg.signal_dim(), d2 = cfg.idler_dim();
  const std::size_t block = d1 * d2;
  const auto& psi = s.amplitudes;

  PairMoments m;
  for (std::size_t n0 = 0; n0 < d0; ++n0) {
    for (std::size_t n1 = 0; n1 < d1; ++n1) {
      const std::size_t row = n0 * block + n1 * d2;
      for (std::size_t n2 = 0; n2 < d2; ++n2) {
        // (A psi)(n) = sqrt((n1+1)(n2+1)) psi(n0, n1+1, n2+1)
        Complex lowered{};
        if (n1 + 1 < d1 && n2 + 1 < d2) {
          lowered = std::sqrt(static_cast<double>((n1 + 1) * (n2 + 1))) * psi[row + d2 + n2 + 1];
        }
        // (A+ psi)(n) = sqrt(n1 n2) psi(n0, n1-1, n2-1), truncated at the box
        Complex raised{};
        if (n1 > 0 && n2 > 0) {
          raised = std::sqrt(static_cast<double>(n1 * n2)) * psi[row - d2 + n2 - 1];
        }
        m.a += std::conj(psi[row + n2]) * lowered;
        m.a_squared += std::conj(raised) * lowered;
        m.adag_a += std::norm(lowered);
        m.a_adag += std::norm(raised);
      }
    }
  }
  return m;
}

Complex expect_pair_amplitude(const PureState& s) { return pair_moments(s).a; }

Complex expect_mode_amplitude(const PureState& s, Mode mode) {
  return inner(s, apply_ladder(mode, Ladder::kLower, s));
}

Complex expect_pump_amplitude(const PureState& s) { return expect_mode_amplitude(s, Mode::kPump); }

double expect_mode_number(const PureState& s, Mode mode) {
  return diagonal_sum(s, [mode](std::size_t n0, std::size_t n1, std::size_t n2) {
    switch (mode) {
      case Mode::kPump: return static_cast<double>(n0);
      case Mode::kSignal: return static_cast<double>(n1);
      case Mode::kIdler: return static_cast<double>(n2);
    }
    return 0.0;
  });
}

double expect_total_number(const PureState& s) {
  return diagonal_sum(s, [](std::size_t, std::size_t n1, std::size_t n2) {
    return static_cast<double>(n1 + n2);
  });
}

double expect_number_difference(const PureState& s) {
  return diagonal_sum(s, [](std::size_t, std::size_t n1, std::size_t n2) {
    return static_cast<double>(n1) - static_cast<double>(n2);
  });
}

double expect_pair_quadrature(const PureState& s, QuadratureSign sign) {
  const Complex a = expect_pair_amplitude(s);
  // <C+> = 2 Re<A>, <C-> = (<A> - conj<A>)/i = 2 Im<A>
  return sign == QuadratureSign::kPlus ? 2.0 * a.real() : 2.0 * a.imag();
}

double pair_quadrature_dispersion(const PureState& s, QuadratureSign sign) {
  const PairMoments m = pair_moments(s);
  // <C+^2> = <A^2> + <A+^2> + <A+A> + <AA+>,  <C-^2> = -<A^2> - <A+^2> + <A+A> + <AA+>
  const double cross = 2.0 * m.a_squared.real();
  const double second = (sign == QuadratureSign::kPlus ? cross : -cross) + m.adag_a + m.a_adag;
  const double first = sign == QuadratureSign::kPlus ? 2.0 * m.a.real() : 2.0 * m.a.imag();
  return second - first * first;
}

double pump_quadrature(const PureState& s) { return 2.0 * expect_pump_amplitude(s).real(); }

double conserved_excitation(const PureState& s) {
  return diagonal_sum(s, [](std::size_t n0, std::size_t n1, std::size_t n2) {
    return static_cast<double>(n0) + 0.5 * static_cast<double>(n1 + n2);
  });
}

std::vector<double> photon_number_distribution(const PureState& s, Mode mode) {
  std::vector<double> p(s.config.dim(mode), 0.0);
  const auto& cfg = s.config;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const Occupation n = cfg.occupation(i);
    const std::size_t k = mode == Mode::kPump ? n.pump : (mode == Mode::kSignal ? n.signal : n.idler);
    p[k] += std::norm(s.amplitudes[i]);
  }
  return p;
}

double edge_occupancy(const PureState& s) {
  const auto& cfg = s.config;
  const std::size_t d0 = cfg.pump_dim(), d1 = cfg.signal_dim(), d2 = cfg.idler_dim();
  return diagonal_sum(s, [=](std::size_t n0, std::size_t n1, std::size_t n2) {
    const bool edge = (d0 > 1 && n0 + 1 == d0) || (d1 > 1 && n1 + 1 == d1) || (d2 > 1 && n2 + 1 == d2);
    return edge ? 1.0 : 0.0;
  });
}

ObservableSet measure(const PureState& s) {
  const PairMoments m = pair_moments(s);
  ObservableSet o;
  o.pair_amp = m.a;
  o.pair_amp_conj = std::conj(m.a);
  o.total_n = expect_total_number(s);
  o.diff_n = expect_number_difference(s);
  o.pump_amp = expect_pump_amplitude(s);
  o.pump_quad = 2.0 * o.pump_amp.real();
  o.c_plus = 2.0 * m.a.real();
  const double cross = 2.0 * m.a_squared.real();
  o.disp_plus = cross + m.adag_a + m.a_adag - o.c_plus * o.c_plus;
  const double c_minus = 2.0 * m.a.imag();
  o.disp_minus = -cross + m.adag_a + m.a_adag - c_minus * c_minus;
  o.conserved_k = conserved_excitation(s);
  o.norm = s.norm_squared();
  o.edge_occupancy = edge_occupancy(s);
  return o;
}

ObservableFn observable(ObservableKind kind) {
  switch (kind) {
    case ObservableKind::kDispersionPlus:
      return [](const PureState& s) { return pair_quadrature_dispersion(s, QuadratureSign::kPlus); };
    case ObservableKind::kDispersionMinus:
      return [](const PureState& s) { return pair_quadrature_dispersion(s, QuadratureSign::kMinus); };
    case ObservableKind::kPairQuadraturePlus:
      return [](const PureState& s) { return expect_pair_quadrature(s, QuadratureSign::kPlus); };
    case ObservableKind::kTotalNumber:
      return [](const PureState& s) { return expect_total_number(s); };
    case ObservableKind::kNumberDifference:
      return [](const PureState& s) { return expect_number_difference(s); };
    case ObservableKind::kConservedExcitation:
      return [](const PureState& s) { return conserved_excitation(s); };
    case ObservableKind::kPumpQuadrature:
      return [](const PureState& s) { return pump_quadrature(s); };
  }
  throw DomainError("unknown observable kind");
}

}  // namespace pnes
