#include "pnes/fock_space.hpp"

#include <cmath>
#include <limits>
#include <algorithm>
#include <string>

#include "pnes/errors.hpp"

namespace pnes {

namespace {

std::vector<double> sqrt_table(std::size_t n) {
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = std::sqrt(static_cast<double>(k));
  return t;
}

std::string occupation_string(const Occupation& n) {
  return "(" + std::to_string(n.pump) + "," + std::to_string(n.signal) + "," +
         std::to_string(n.idler) + ")";
}

}  // namespace

TruncationConfig::TruncationConfig(std::size_t d0, std::size_t d1, std::size_t d2)
    : dims_{d0, d1, d2} {
  if (d0 == 0 || d1 == 0 || d2 == 0) {
    throw DomainError("truncation dimensions must be >= 1");
  }
  constexpr auto kMax = std::numeric_limits<std::size_t>::max() / sizeof(Complex);
  if (d1 > kMax / d2 || d0 > kMax / (d1 * d2)) {
    throw DomainError("truncation dimension product exceeds addressable vector length");
  }
}

bool TruncationConfig::contains(const Occupation& n) const noexcept {
  return n.pump < dims_[0] && n.signal < dims_[1] && n.idler < dims_[2];
}

std::size_t TruncationConfig::index(const Occupation& n) const {
  if (!contains(n)) {
    throw DomainError("occupation " + occupation_string(n) + " outside truncation box (" +
                      std::to_string(dims_[0]) + "," + std::to_string(dims_[1]) + "," +
                      std::to_string(dims_[2]) + ")");
  }
  return (n.pump * dims_[1] + n.signal) * dims_[2] + n.idler;
}

Occupation TruncationConfig::occupation(std::size_t index) const {
  if (index >= size()) throw DomainError("basis index out of range");
  Occupation n;
  n.idler = index % dims_[2];
  index /= dims_[2];
  n.signal = index % dims_[1];
  n.pump = index / dims_[1];
  return n;
}

PureState::PureState(TruncationConfig cfg, Amplitudes amps, double leak)
    : config(cfg), amplitudes(std::move(amps)), leakage(leak) {
  if (amplitudes.size() != config.size()) {
    throw DomainError("amplitude vector length does not match truncation config");
  }
  if (!(leakage >= 0.0)) throw DomainError("leakage must be nonnegative");
}

PureState PureState::zero(const TruncationConfig& cfg) {
  return PureState(cfg, Amplitudes(cfg.size()));
}

PureState PureState::basis(const TruncationConfig& cfg, const Occupation& n) {
  PureState s = zero(cfg);
  s.amplitudes[cfg.index(n)] = 1.0;
  return s;
}

double PureState::norm_squared() const noexcept {
  double acc = 0.0;
  for (const auto& a : amplitudes) acc += std::norm(a);
  return acc;
}

void HamiltonianParams::validate() const {
  if (!std::isfinite(chi)) throw DomainError("chi must be finite");
  if (chi < 0.0) throw DomainError("chi must be nonnegative");
  if (!resonant) throw DomainError("only the resonant case omega0 = omega1 + omega2 is supported");
}

std::size_t basis_index(std::size_t n0, std::size_t n1, std::size_t n2,
                        const TruncationConfig& cfg) {
  return cfg.index({n0, n1, n2});
}

PureState apply_ladder(Mode mode, Ladder kind, const PureState& s) {
  const auto& cfg = s.config;
  const std::size_t d1 = cfg.signal_dim(), d2 = cfg.idler_dim();
  const std::size_t dm = cfg.dim(mode);
  // Stride of mode m in the flat index.
  const std::size_t stride = mode == Mode::kPump ? d1 * d2 : (mode == Mode::kSignal ? d2 : 1);
  const auto root = sqrt_table(dm);

  PureState out = PureState::zero(cfg);
  out.leakage = s.leakage;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const Complex a = s.amplitudes[i];
    if (a == Complex{}) continue;
    const std::size_t n = (i / stride) % dm;
    if (kind == Ladder::kLower) {
      if (n > 0) out.amplitudes[i - stride] += root[n] * a;
    } else if (n + 1 < dm) {
      out.amplitudes[i + stride] += root[n + 1] * a;
    } else {
      out.leakage += static_cast<double>(n + 1) * std::norm(a);
    }
  }
  return out;
}

double apply_interaction_generator(std::span<const Complex> in, std::span<Complex> out,
                                   const TruncationConfig& cfg, double chi) {
  const std::size_t d0 = cfg.pump_dim(), d1 = cfg.signal_dim(), d2 = cfg.idler_dim();
  const std::size_t block = d1 * d2;
  const auto root = sqrt_table(std::max({d0, d1, d2}));

  double discarded = 0.0;
  for (std::size_t n0 = 0; n0 < d0; ++n0) {
    for (std::size_t n1 = 0; n1 < d1; ++n1) {
      const std::size_t row = n0 * block + n1 * d2;
      for (std::size_t n2 = 0; n2 < d2; ++n2) {
        Complex acc{};
        // a1+ a2+ a0 brings in |n0+1, n1-1, n2-1>.
        if (n0 + 1 < d0 && n1 > 0 && n2 > 0) {
          acc += (root[n0 + 1] * root[n1] * root[n2]) * in[row + block - d2 + n2 - 1];
        }
        // a1 a2 a0+ brings in |n0-1, n1+1, n2+1>.
        if (n0 > 0 && n1 + 1 < d1 && n2 + 1 < d2) {
          acc -= (root[n0] * root[n1 + 1] * root[n2 + 1]) * in[row - block + d2 + n2 + 1];
        }
        out[row + n2] = chi * acc;

        // Contributions of this source that leave the box. Each out-of-box
        // target has exactly one in-box source, so squared norms add.
        const Complex a = in[row + n2];
        if (a == Complex{}) continue;
        if (n0 > 0 && (n1 + 1 == d1 || n2 + 1 == d2)) {
          discarded += chi * chi * static_cast<double>(n0 * (n1 + 1) * (n2 + 1)) * std::norm(a);
        }
        if (n0 + 1 == d0 && n1 > 0 && n2 > 0) {
          discarded += chi * chi * static_cast<double>((n0 + 1) * n1 * n2) * std::norm(a);
        }
      }
    }
  }
  return discarded;
}

PureState apply_interaction_generator(const PureState& s, const HamiltonianParams& p) {
  p.validate();
  PureState out = PureState::zero(s.config);
  out.leakage = s.leakage + apply_interaction_generator(s.amplitudes, out.amplitudes, s.config, p.chi);
  return out;
}

Complex inner(const PureState& s1, const PureState& s2) {
  if (!(s1.config == s2.config)) throw DomainError("inner product of states with different configs");
  Complex acc{};
  for (std::size_t i = 0; i < s1.amplitudes.size(); ++i) {
    acc += std::conj(s1.amplitudes[i]) * s2.amplitudes[i];
  }
  return acc;
}

std::size_t default_pump_dimension(double alpha) {
  const double a = std::abs(alpha);
  return static_cast<std::size_t>(std::ceil(a * a + 6.0 * a + 10.0));
}

}  // namespace pnes
