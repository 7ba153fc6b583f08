#pragma once

// Truncated three-mode Fock space: pump (mode 0), signal (mode 1), idler (mode 2).
//
// Mode m holds occupations 0..d_m-1. Basis states are laid out row-major with
// the pump slowest, index = (n0*d1 + n1)*d2 + n2, so each pump occupation owns
// a contiguous signal/idler block.
//
// Every operator here is the box projection P.op.P of its infinite-space
// counterpart. Amplitude that an operator would send past a cutoff is dropped
// and its squared magnitude is added to PureState::leakage.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pnes {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

enum class Mode : int { kPump = 0, kSignal = 1, kIdler = 2 };
enum class Ladder { kLower, kRaise };

struct Occupation {
  std::size_t pump = 0;
  std::size_t signal = 0;
  std::size_t idler = 0;

  friend bool operator==(const Occupation&, const Occupation&) = default;
};

class TruncationConfig {
 public:
  /// Throws DomainError when any dimension is zero or the product overflows.
  TruncationConfig(std::size_t d0, std::size_t d1, std::size_t d2);

  std::size_t dim(Mode m) const noexcept { return dims_[static_cast<int>(m)]; }
  std::size_t pump_dim() const noexcept { return dims_[0]; }
  std::size_t signal_dim() const noexcept { return dims_[1]; }
  std::size_t idler_dim() const noexcept { return dims_[2]; }
  std::size_t size() const noexcept { return dims_[0] * dims_[1] * dims_[2]; }

  /// Throws DomainError for occupations outside the box.
  std::size_t index(const Occupation& n) const;
  Occupation occupation(std::size_t index) const;
  bool contains(const Occupation& n) const noexcept;

  friend bool operator==(const TruncationConfig&, const TruncationConfig&) = default;

 private:
  std::array<std::size_t, 3> dims_;
};

/// Pure state over a truncated three-mode space. Not necessarily normalized:
/// ladder operators return unnormalized vectors.
struct PureState {
  TruncationConfig config;
  Amplitudes amplitudes;
  /// Discarded probability mass (nonnegative, only ever increases).
  double leakage = 0.0;

  PureState(TruncationConfig cfg, Amplitudes amps, double leak = 0.0);

  static PureState zero(const TruncationConfig& cfg);
  static PureState basis(const TruncationConfig& cfg, const Occupation& n);

  Complex& operator[](const Occupation& n) { return amplitudes[config.index(n)]; }
  const Complex& operator[](const Occupation& n) const { return amplitudes[config.index(n)]; }

  double norm_squared() const noexcept;
};

struct HamiltonianParams {
  double chi = 0.0;
  /// omega_0 = omega_1 + omega_2; the free part is removed in the rotating frame.
  bool resonant = true;

  /// Throws DomainError unless chi is finite and nonnegative and resonant is set.
  void validate() const;
};

std::size_t basis_index(std::size_t n0, std::size_t n1, std::size_t n2, const TruncationConfig& cfg);

PureState apply_ladder(Mode mode, Ladder kind, const PureState& s);

/// G = chi (a1+ a2+ a0 - a1 a2 a0+), i.e. -iH_int in the resonant rotating
/// frame with hbar = 1. G is real and antisymmetric on the box.
PureState apply_interaction_generator(const PureState& s, const HamiltonianParams& p);

/// Hot-loop form of apply_interaction_generator: writes P.G.in into `out` and
/// returns the squared norm of the part of G.in that falls outside the box.
double apply_interaction_generator(std::span<const Complex> in, std::span<Complex> out,
                                   const TruncationConfig& cfg, double chi);

/// <s1|s2>, conjugate-linear in s1. Throws DomainError on config mismatch.
Complex inner(const PureState& s1, const PureState& s2);

/// Default pump cutoff for a coherent amplitude: ceil(|alpha|^2 + 6|alpha| + 10).
std::size_t default_pump_dimension(double alpha);

}  // namespace pnes
