#include "pnes/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "pnes/errors.hpp"

namespace pnes {

namespace {

constexpr double kBesselMaxArgument = 60.0;

// log(n!), exact for n <= 20 and lgamma above.
double log_factorial(std::size_t n) {
  static const auto kTable = [] {
    std::array<double, 21> t{};
    double f = 1.0;
    for (std::size_t k = 1; k < t.size(); ++k) {
      f *= static_cast<double>(k);
      t[k] = std::log(f);
    }
    return t;
  }();
  return n < kTable.size() ? kTable[n] : std::lgamma(static_cast<double>(n) + 1.0);
}

// log(lambda^n / n!) for lambda > 0.
double log_power_over_factorial(double lambda, std::size_t n) {
  return static_cast<double>(n) * std::log(lambda) - log_factorial(n);
}

// Sum of exp(log_term(n)) for n >= d until terms are negligible and decreasing.
template <typename LogTerm>
double tail_sum(std::size_t d, double peak, LogTerm log_term) {
  double acc = 0.0;
  for (std::size_t n = d;; ++n) {
    const double t = std::exp(log_term(n));
    acc += t;
    if (static_cast<double>(n) > peak && (t < 1e-18 * acc || t < 1e-300)) break;
    if (n > d + 100000) break;
  }
  return acc;
}

PureState pair_state(const std::vector<Complex>& diagonal, std::size_t d) {
  const TruncationConfig cfg(1, d, d);
  PureState s = PureState::zero(cfg);
  double norm = 0.0;
  for (const auto& c : diagonal) norm += std::norm(c);
  const double scale = 1.0 / std::sqrt(norm);
  for (std::size_t n = 0; n < diagonal.size(); ++n) {
    s.amplitudes[cfg.index({0, n, n})] = scale * diagonal[n];
  }
  return s;
}

void require_finite_nonneg(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError(std::string(name) + " must be finite and nonnegative");
  }
}

}  // namespace

void TwbParam::validate() const {
  if (!std::isfinite(x) || x < 0.0 || x >= 1.0) {
    throw DomainError("twb parameter x must satisfy 0 <= x < 1, got " + std::to_string(x));
  }
}

void TmcParam::validate() const {
  require_finite_nonneg(lambda, "tmc parameter lambda");
  if (2.0 * lambda > kBesselMaxArgument) {
    throw DomainError("tmc parameter lambda must be <= 30 (I0 support)");
  }
}

double PnesCoefficients::normalization() const {
  double sum = 0.0;
  for (const auto& v : c) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("pnes coefficients must be finite");
    }
    sum += std::norm(v);
  }
  if (sum == 0.0) throw DomainError("pnes coefficients are all zero");
  return 1.0 / sum;
}

double bessel_i0(double z) {
  if (!std::isfinite(z) || z < 0.0 || z > kBesselMaxArgument) {
    throw DomainError("bessel_i0 supports 0 <= z <= 60");
  }
  const double q = 0.25 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; term >= 1e-16 * sum; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
  }
  return sum;
}

double coherent_tail_mass(double alpha, std::size_t d) {
  require_finite_nonneg(alpha, "coherent amplitude");
  if (alpha == 0.0) return 0.0;
  const double mean = alpha * alpha;
  return tail_sum(d, mean, [&](std::size_t n) {
    return -mean + log_power_over_factorial(mean, n);
  });
}

double twb_tail_mass(double x, std::size_t d) {
  TwbParam{x}.validate();
  return std::pow(x, 2.0 * static_cast<double>(d));
}

double tmc_tail_mass(double lambda, std::size_t d) {
  TmcParam{lambda}.validate();
  if (lambda == 0.0) return 0.0;
  const double norm = bessel_i0(2.0 * lambda);
  return tail_sum(d, lambda, [&](std::size_t n) { return 2.0 * log_power_over_factorial(lambda, n); }) /
         norm;
}

std::size_t twb_dimension(double x, double tail) {
  TwbParam{x}.validate();
  if (x == 0.0) return 1;
  auto d = static_cast<std::size_t>(std::max(1.0, std::floor(std::log(tail) / (2.0 * std::log(x)))));
  while (twb_tail_mass(x, d) >= tail) ++d;
  return d;
}

std::size_t tmc_dimension(double lambda, double tail) {
  TmcParam{lambda}.validate();
  std::size_t d = 1;
  while (tmc_tail_mass(lambda, d) >= tail) ++d;
  return d;
}

std::size_t pump_dimension(double alpha, double tail) {
  std::size_t d = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(alpha * alpha)));
  while (coherent_tail_mass(alpha, d) >= tail) ++d;
  return std::max(d, default_pump_dimension(alpha));
}

CoherentAmplitudes coherent(double alpha, std::size_t d) {
  require_finite_nonneg(alpha, "coherent amplitude");
  if (d == 0) throw DomainError("coherent state dimension must be >= 1");
  CoherentAmplitudes out;
  out.amplitudes.assign(d, Complex{});
  if (alpha == 0.0) {
    out.amplitudes[0] = 1.0;
    return out;
  }
  const double mean = alpha * alpha;
  double norm = 0.0;
  for (std::size_t n = 0; n < d; ++n) {
    const double amp = std::exp(0.5 * (-mean + log_power_over_factorial(mean, n)));
    out.amplitudes[n] = amp;
    norm += amp * amp;
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : out.amplitudes) a *= scale;
  out.tail_mass = coherent_tail_mass(alpha, d);
  out.truncation_warning = out.tail_mass > kCoherentWarningTail;
  return out;
}

PureState twb(TwbParam x, std::size_t d) {
  x.validate();
  if (d == 0) throw DomainError("twb dimension must be >= 1");
  const double tail = twb_tail_mass(x.x, d);
  if (tail >= kConstructorTailTolerance) {
    throw DimensionTooSmallError("twb cutoff " + std::to_string(d) + " too small for x = " +
                                     std::to_string(x.x) + " (tail " + std::to_string(tail) + ")",
                                 tail);
  }
  std::vector<Complex> diag(d);
  const double front = std::sqrt(1.0 - x.x * x.x);
  double p = 1.0;
  for (std::size_t n = 0; n < d; ++n) {
    diag[n] = front * p;
    p *= x.x;
  }
  return pair_state(diag, d);
}

PureState tmc(TmcParam lam, std::size_t d) {
  lam.validate();
  if (d == 0) throw DomainError("tmc dimension must be >= 1");
  const double tail = tmc_tail_mass(lam.lambda, d);
  if (tail >= kConstructorTailTolerance) {
    throw DimensionTooSmallError("tmc cutoff " + std::to_string(d) + " too small for lambda = " +
                                     std::to_string(lam.lambda) + " (tail " + std::to_string(tail) +
                                     ")",
                                 tail);
  }
  std::vector<Complex> diag(d);
  if (lam.lambda == 0.0) {
    diag[0] = 1.0;
  } else {
    const double inv_sqrt_norm = 1.0 / std::sqrt(bessel_i0(2.0 * lam.lambda));
    for (std::size_t n = 0; n < d; ++n) {
      diag[n] = inv_sqrt_norm * std::exp(log_power_over_factorial(lam.lambda, n));
    }
  }
  return pair_state(diag, d);
}

PureState pnes(const PnesCoefficients& coeffs, std::size_t d) {
  const double normalization = coeffs.normalization();
  if (d < coeffs.c.size()) throw DomainError("pnes dimension smaller than coefficient count");
  std::vector<Complex> diag(coeffs.c.size());
  const double scale = std::sqrt(normalization);
  for (std::size_t n = 0; n < diag.size(); ++n) diag[n] = scale * coeffs.c[n];
  return pair_state(diag, d);
}

PureState product_state(std::span<const Complex> pump, const PureState& pair) {
  if (pump.empty()) throw DomainError("pump amplitude vector is empty");
  if (pair.config.pump_dim() != 1) {
    throw DomainError("product_state expects a pair state with pump dimension 1");
  }
  const TruncationConfig cfg(pump.size(), pair.config.signal_dim(), pair.config.idler_dim());
  PureState out = PureState::zero(cfg);
  out.leakage = pair.leakage;
  const std::size_t block = pair.amplitudes.size();
  for (std::size_t n0 = 0; n0 < pump.size(); ++n0) {
    for (std::size_t j = 0; j < block; ++j) {
      out.amplitudes[n0 * block + j] = pump[n0] * pair.amplitudes[j];
    }
  }
  return out;
}

}  // namespace pnes
