#pragma once

// Test-only oracles, independent of the matrix-free code paths: explicit dense
// ladder matrices built with Eigen Kronecker products, brute-force series sums,
// and a random state generator.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

#include "pnes/fock_space.hpp"

namespace pnes::testing {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix single_mode_lower(std::size_t d) {
  Matrix a = Matrix::Zero(d, d);
  for (std::size_t n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

struct DenseOperators {
  Matrix a0, a1, a2;  // truncated lowering operators on the full space
  Matrix identity;

  explicit DenseOperators(const TruncationConfig& cfg) {
    const auto d0 = cfg.pump_dim(), d1 = cfg.signal_dim(), d2 = cfg.idler_dim();
    const Matrix i0 = Matrix::Identity(d0, d0), i1 = Matrix::Identity(d1, d1),
                 i2 = Matrix::Identity(d2, d2);
    // Pump is the slowest index, so it is the leftmost Kronecker factor.
    a0 = kron(single_mode_lower(d0), kron(i1, i2));
    a1 = kron(i0, kron(single_mode_lower(d1), i2));
    a2 = kron(i0, kron(i1, single_mode_lower(d2)));
    identity = Matrix::Identity(cfg.size(), cfg.size());
  }

  Matrix pair() const { return a1 * a2; }
  Matrix generator(double chi) const {
    const Matrix ad1 = a1.adjoint(), ad2 = a2.adjoint(), ad0 = a0.adjoint();
    return chi * (ad1 * ad2 * a0 - a1 * a2 * ad0);
  }
};

inline Vector to_vector(const PureState& s) {
  Vector v(s.amplitudes.size());
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) v(static_cast<Eigen::Index>(i)) = s.amplitudes[i];
  return v;
}

inline PureState from_vector(const TruncationConfig& cfg, const Vector& v) {
  Amplitudes amps(cfg.size());
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = v(static_cast<Eigen::Index>(i));
  return PureState(cfg, amps);
}

inline std::complex<double> expectation(const Vector& psi, const Matrix& op) {
  return psi.dot(op * psi);  // Eigen's dot conjugates the first argument
}

/// Normalized random state. With `interior`, amplitudes vanish on the last
/// occupation of every mode so that raising never leaves the box.
inline PureState random_state(const TruncationConfig& cfg, std::mt19937_64& rng, bool interior = false) {
  std::normal_distribution<double> g(0.0, 1.0);
  PureState s = PureState::zero(cfg);
  double norm = 0.0;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const Occupation n = cfg.occupation(i);
    if (interior && (n.pump + 1 == cfg.pump_dim() || n.signal + 1 == cfg.signal_dim() ||
                     n.idler + 1 == cfg.idler_dim())) {
      continue;
    }
    s.amplitudes[i] = {g(rng), g(rng)};
    norm += std::norm(s.amplitudes[i]);
  }
  for (auto& a : s.amplitudes) a /= std::sqrt(norm);
  return s;
}

/// Real-amplitude variant of random_state.
inline PureState random_real_state(const TruncationConfig& cfg, std::mt19937_64& rng) {
  PureState s = random_state(cfg, rng);
  double norm = 0.0;
  for (auto& a : s.amplitudes) {
    a = a.real();
    norm += std::norm(a);
  }
  for (auto& a : s.amplitudes) a /= std::sqrt(norm);
  return s;
}

// Brute-force twin-beam moments from the defining series with weights
// (1 - x^2) x^(2n) on |n,n>, summed until terms vanish.
struct TwbSums {
  double total_n = 0.0;
  double pair_amp = 0.0;
};

inline TwbSums twb_series(double x) {
  TwbSums s;
  const double w0 = 1.0 - x * x;
  double p = w0;  // (1 - x^2) x^(2n)
  for (int n = 0; n < 5000; ++n) {
    s.total_n += 2.0 * n * p;
    // <A> = sum_n c_n c_{n+1} (n + 1), c_n c_{n+1} = (1 - x^2) x^(2n+1)
    s.pair_amp += (n + 1.0) * p * x;
    p *= x * x;
    if (p < 1e-300) break;
  }
  return s;
}

/// (1/pi) int_0^pi exp(z cos t) dt by the trapezoid rule, which converges
/// geometrically for this periodic analytic integrand.
inline double bessel_i0_quadrature(double z, int panels = 400) {
  const double pi = std::acos(-1.0);
  const double h = pi / panels;
  double acc = 0.5 * (std::exp(z) + std::exp(-z));
  for (int k = 1; k < panels; ++k) acc += std::exp(z * std::cos(k * h));
  return acc * h / pi;
}

}  // namespace pnes::testing
