#include "pnes/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pnes/errors.hpp"

namespace pnes {

namespace {

// Fixed-step integrator for the linear autonomous system psi' = G psi.
class Stepper {
 public:
  Stepper(const TruncationConfig& cfg, double chi, Integrator method)
      : cfg_(cfg), chi_(chi), method_(method), k1_(cfg.size()), k2_(cfg.size()),
        k3_(cfg.size()), k4_(cfg.size()), tmp_(cfg.size()) {}

  /// Advances psi by dt and returns ||(1 - P) G psi||^2 at the start of the step.
  double step(Amplitudes& psi, double dt) {
    return method_ == Integrator::kRk4 ? rk4(psi, dt) : taylor4(psi, dt);
  }

  double outflow(const Amplitudes& psi) { return apply(psi, k1_); }

 private:
  double apply(const Amplitudes& in, Amplitudes& out) {
    return apply_interaction_generator(in, out, cfg_, chi_);
  }

  double rk4(Amplitudes& psi, double dt) {
    const std::size_t n = psi.size();
    const double outflow = apply(psi, k1_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = psi[i] + (0.5 * dt) * k1_[i];
    apply(tmp_, k2_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = psi[i] + (0.5 * dt) * k2_[i];
    apply(tmp_, k3_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = psi[i] + dt * k3_[i];
    apply(tmp_, k4_);
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] += w * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
    return outflow;
  }

  // psi + dt G psi + dt^2/2 G^2 psi + dt^3/6 G^3 psi + dt^4/24 G^4 psi
  double taylor4(Amplitudes& psi, double dt) {
    const std::size_t n = psi.size();
    const double outflow = apply(psi, k1_);
    apply(k1_, k2_);
    apply(k2_, k3_);
    apply(k3_, k4_);
    const double c1 = dt, c2 = dt * dt / 2.0, c3 = dt * dt * dt / 6.0, c4 = dt * dt * dt * dt / 24.0;
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] += c1 * k1_[i] + c2 * k2_[i] + c3 * k3_[i] + c4 * k4_[i];
    }
    return outflow;
  }

  TruncationConfig cfg_;
  double chi_;
  Integrator method_;
  Amplitudes k1_, k2_, k3_, k4_, tmp_;
};

double squared_norm(const Amplitudes& psi) {
  double acc = 0.0;
  for (const auto& a : psi) acc += std::norm(a);
  return acc;
}

bool all_finite(const ObservableSet& o) {
  for (double v : {o.pair_amp.real(), o.pair_amp.imag(), o.total_n, o.diff_n, o.pump_amp.real(),
                   o.pump_amp.imag(), o.disp_plus, o.disp_minus, o.conserved_k, o.norm}) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

void EvolutionSpec::validate() const {
  params.validate();
  if (!std::isfinite(dt) || dt <= 0.0) throw DomainError("evolution dt must be positive");
  if (record_every == 0) throw DomainError("record_every must be >= 1");
}

ExactTrajectory evolve(const PureState& s0, const EvolutionSpec& spec) {
  spec.validate();
  const double norm0 = s0.norm_squared();
  if (std::abs(norm0 - 1.0) > 1e-9) throw DomainError("initial state must have unit norm");

  ExactTrajectory traj{{}, {}, {}, s0, 0.0, 0.0, {}};
  const double pump_scale = std::max(1.0, std::abs(expect_pump_amplitude(s0)));
  if (spec.params.chi * spec.dt * pump_scale > 0.1) {
    std::ostringstream msg;
    msg << "chi*dt*pump scale = " << spec.params.chi * spec.dt * pump_scale
        << " exceeds 0.1; step may be inaccurate";
    traj.warnings.push_back(msg.str());
  }

  Stepper stepper(s0.config, spec.params.chi, spec.method);
  Amplitudes& psi = traj.final_state.amplitudes;

  auto record = [&](std::size_t k) {
    ObservableSet o = measure(traj.final_state);
    if (!all_finite(o)) {
      throw IntegrationDivergedError("observables became non-finite at step " + std::to_string(k), k);
    }
    traj.times.push_back(static_cast<double>(k) * spec.dt);
    traj.observables.push_back(o);
    traj.leakage_history.push_back(traj.final_state.leakage);
  };

  record(0);
  double outflow_integral = 0.0;
  double prev_outflow = 0.0;
  for (std::size_t k = 1; k <= spec.steps; ++k) {
    const double out = std::sqrt(stepper.step(psi, spec.dt));
    if (k > 1) outflow_integral += 0.5 * spec.dt * (prev_outflow + out);
    prev_outflow = out;

    const double norm = squared_norm(psi);
    if (!std::isfinite(norm)) {
      throw IntegrationDivergedError("state norm became non-finite at step " + std::to_string(k), k);
    }
    traj.norm_drift = std::max(traj.norm_drift, std::abs(norm - norm0));
    if (k % spec.record_every == 0 || k == spec.steps) {
      // Close the trapezoid with the outflow of the current state.
      const double closed = outflow_integral + 0.5 * spec.dt * (prev_outflow + std::sqrt(stepper.outflow(psi)));
      traj.final_state.leakage = s0.leakage + closed * closed;
      record(k);
    }
  }
  traj.leakage = traj.final_state.leakage;
  return traj;
}

PureState propagate(const PureState& s0, const HamiltonianParams& params, double duration,
                    std::size_t steps, Integrator method) {
  params.validate();
  if (!std::isfinite(duration)) throw DomainError("propagation duration must be finite");
  PureState s = s0;
  if (steps == 0 || duration == 0.0) return s;
  Stepper stepper(s.config, params.chi, method);
  const double dt = duration / static_cast<double>(steps);
  double integral = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    integral += std::abs(dt) * std::sqrt(stepper.step(s.amplitudes, dt));
  }
  if (!std::isfinite(squared_norm(s.amplitudes))) {
    throw IntegrationDivergedError("state norm became non-finite during propagation", steps);
  }
  s.leakage += integral * integral;
  return s;
}

double default_rate_step(const PureState& s0, const HamiltonianParams& params) {
  params.validate();
  if (params.chi == 0.0) return 1e-3;
  const double scale = std::max({1.0, std::abs(expect_pump_amplitude(s0)), expect_total_number(s0)});
  return 1e-3 / (params.chi * scale);
}

RateEstimate rate_of(const PureState& s0, const HamiltonianParams& params, const ObservableFn& f,
                     const RateOptions& options) {
  params.validate();
  RateEstimate est;
  est.h = options.h > 0.0 ? options.h : default_rate_step(s0, params);
  if (!std::isfinite(est.h) || est.h <= 0.0) throw DomainError("finite-difference step must be positive");
  const std::size_t substeps = std::max<std::size_t>(1, options.substeps);

  auto central = [&](double h) {
    const double up = f(propagate(s0, params, h, substeps, options.method));
    const double down = f(propagate(s0, params, -h, substeps, options.method));
    return (up - down) / (2.0 * h);
  };
  est.coarse = central(est.h);
  est.fine = central(0.5 * est.h);
  est.value = (4.0 * est.fine - est.coarse) / 3.0;
  if (!std::isfinite(est.value)) {
    throw IntegrationDivergedError("finite-difference rate is non-finite", 0);
  }

  const double disagreement = std::abs(est.coarse - est.fine);
  if (disagreement > std::max(options.abs_tol, options.rel_tol * std::abs(est.value))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Richardson estimates disagree: D(h) = " << est.coarse << ", D(h/2) = " << est.fine;
    throw NoisyDerivativeError(msg.str(), est.coarse, est.fine);
  }
  return est;
}

}  // namespace pnes
