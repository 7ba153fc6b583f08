#include "pnes/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "pnes/errors.hpp"

namespace pnes {

namespace {

constexpr double kQuadratureTolerance = 1e-12;
// exp(-kGaussianReach^2 / 2) ~ 5e-32: the Gaussian is zero beyond this many widths.
constexpr double kGaussianReach = 12.0;
// Profiles must have deposited less than this much tau before the first grid point.
constexpr double kStartTolerance = 1e-14;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_chi(double chi) {
  if (!std::isfinite(chi) || chi < 0.0) throw DomainError("chi must be finite and nonnegative");
}

double gaussian_value(const PumpProfile::Gaussian& g, double t) {
  const double u = (t - g.center) / g.width;
  return g.peak * std::exp(-0.5 * u * u);
}

double linear(const PumpProfile::Sampled& s, std::size_t seg, double t) {
  const double t0 = s.times[seg], t1 = s.times[seg + 1];
  const double w = (t - t0) / (t1 - t0);
  return (1.0 - w) * s.values[seg] + w * s.values[seg + 1];
}

std::size_t segment_of(const PumpProfile::Sampled& s, double t) {
  const auto it = std::upper_bound(s.times.begin(), s.times.end(), t);
  const auto idx = static_cast<std::size_t>(std::distance(s.times.begin(), it));
  return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, s.times.size() - 2);
}

void check_support(const PumpProfile::Sampled& s, double t) {
  if (t < s.times.front() || t > s.times.back()) {
    std::ostringstream msg;
    msg << "sampled pump profile queried at t = " << t << " outside [" << s.times.front() << ", "
        << s.times.back() << "]";
    throw ExtrapolationError(msg.str());
  }
}

}  // namespace

PumpProfile::PumpProfile(Variant v) : v_(std::move(v)) {
  std::visit(overloaded{
                 [](const Constant& c) { require_finite(c.amplitude, "pump amplitude"); },
                 [](const Rectangular& r) {
                   require_finite(r.amplitude, "pump amplitude");
                   if (!std::isfinite(r.duration) || r.duration <= 0.0) {
                     throw DomainError("rectangular pulse duration must be positive");
                   }
                 },
                 [](const Gaussian& g) {
                   require_finite(g.peak, "gaussian peak");
                   require_finite(g.center, "gaussian center");
                   if (!std::isfinite(g.width) || g.width <= 0.0) {
                     throw DomainError("gaussian width must be positive");
                   }
                 },
                 [](const Sampled& s) {
                   if (s.times.size() != s.values.size()) {
                     throw DomainError("sampled profile needs equally many times and values");
                   }
                   if (s.times.size() < 2) throw DomainError("sampled profile needs at least two samples");
                   for (std::size_t i = 0; i < s.times.size(); ++i) {
                     require_finite(s.times[i], "sample time");
                     require_finite(s.values[i], "sample value");
                     if (i > 0 && !(s.times[i] > s.times[i - 1])) {
                       throw DomainError("sample times must be strictly increasing");
                     }
                   }
                 },
             },
             v_);
}

double PumpProfile::amplitude(double t) const {
  return std::visit(overloaded{
                        [&](const Constant& c) { return t >= 0.0 ? c.amplitude : 0.0; },
                        [&](const Rectangular& r) {
                          return (t >= 0.0 && t < r.duration) ? r.amplitude : 0.0;
                        },
                        [&](const Gaussian& g) { return gaussian_value(g, t); },
                        [&](const Sampled& s) {
                          check_support(s, t);
                          return linear(s, segment_of(s, t), t);
                        },
                    },
                    v_);
}

double PumpProfile::amplitude_within(double t, double lo, double hi) const {
  const double mid = 0.5 * (lo + hi);
  return std::visit(overloaded{
                        [&](const Constant& c) { return mid >= 0.0 ? c.amplitude : 0.0; },
                        [&](const Rectangular& r) {
                          return (mid >= 0.0 && mid < r.duration) ? r.amplitude : 0.0;
                        },
                        [&](const Gaussian& g) { return gaussian_value(g, t); },
                        [&](const Sampled& s) {
                          check_support(s, lo);
                          check_support(s, hi);
                          return linear(s, segment_of(s, mid), t);
                        },
                    },
                    v_);
}

double PumpProfile::area(double t) const {
  return std::visit(
      overloaded{
          [&](const Constant& c) { return c.amplitude * std::max(t, 0.0); },
          [&](const Rectangular& r) { return r.amplitude * std::clamp(t, 0.0, r.duration); },
          [&](const Gaussian& g) {
            const double lo = g.center - kGaussianReach * g.width;
            const double hi = std::min(t, g.center + kGaussianReach * g.width);
            if (hi <= lo) return 0.0;
            // Width-sized pieces keep every Simpson panel resolving the bump.
            const auto pieces = static_cast<std::size_t>(std::ceil((hi - lo) / g.width));
            const double step = (hi - lo) / static_cast<double>(pieces);
            const double tol = kQuadratureTolerance / static_cast<double>(pieces);
            double acc = 0.0;
            for (std::size_t k = 0; k < pieces; ++k) {
              const double a = lo + static_cast<double>(k) * step;
              const double b = k + 1 == pieces ? hi : a + step;
              acc += adaptive_simpson([&](double u) { return gaussian_value(g, u); }, a, b, tol);
            }
            return acc;
          },
          [&](const Sampled& s) {
            check_support(s, t);
            const std::size_t last = segment_of(s, t);
            const double tol = kQuadratureTolerance / static_cast<double>(last + 1);
            double acc = 0.0;
            for (std::size_t seg = 0; seg <= last; ++seg) {
              const double a = s.times[seg];
              const double b = seg == last ? t : s.times[seg + 1];
              acc += adaptive_simpson([&](double u) { return linear(s, seg, u); }, a, b, tol);
            }
            return acc;
          },
      },
      v_);
}

double PumpProfile::peak_magnitude() const {
  return std::visit(overloaded{
                        [](const Constant& c) { return std::abs(c.amplitude); },
                        [](const Rectangular& r) { return std::abs(r.amplitude); },
                        [](const Gaussian& g) { return std::abs(g.peak); },
                        [](const Sampled& s) {
                          double m = 0.0;
                          for (double v : s.values) m = std::max(m, std::abs(v));
                          return m;
                        },
                    },
                    v_);
}

std::vector<double> PumpProfile::breakpoints() const {
  return std::visit(overloaded{
                        [](const Constant&) { return std::vector<double>{0.0}; },
                        [](const Rectangular& r) { return std::vector<double>{0.0, r.duration}; },
                        [](const Gaussian&) { return std::vector<double>{}; },
                        [](const Sampled& s) { return s.times; },
                    },
                    v_);
}

double tau_of_t(const PumpProfile& p, double chi, double t) {
  require_chi(chi);
  if (std::isinf(t) && t < 0.0) return 0.0;
  require_finite(t, "time");
  return chi * p.area(t);
}

ModelPoint closed_form(double tau) {
  require_finite(tau, "tau");
  const double s = std::sinh(tau);
  return {s * std::cosh(tau), 2.0 * s * s};
}

ModelTrajectory closed_form_trajectory(const PumpProfile& p, double chi, const std::vector<double>& t_grid) {
  ModelTrajectory traj;
  traj.source = ModelTrajectory::Source::kClosedForm;
  traj.times = t_grid;
  for (double t : t_grid) {
    const double tau = tau_of_t(p, chi, t);
    const ModelPoint m = closed_form(tau);
    traj.tau.push_back(tau);
    traj.lambda.push_back(m.lambda);
    traj.n.push_back(m.n);
  }
  return traj;
}

namespace {

struct OdeState {
  double tau;
  double lambda;
  double n;
};

// RK4 over [u, v] in `steps` substeps, on a piece where the profile is smooth.
// tau is integrated alongside so the trajectory carries its own tau column.
OdeState rk4_piece(const PumpProfile& p, double chi, double u, double v, std::size_t steps,
                   OdeState y) {
  const double h = (v - u) / static_cast<double>(steps);
  auto rhs = [&](double t, const OdeState& s) {
    const double a = chi * p.amplitude_within(t, u, v);
    return OdeState{a, a * (s.n + 1.0), 4.0 * a * s.lambda};
  };
  auto axpy = [](const OdeState& s, double c, const OdeState& k) {
    return OdeState{s.tau + c * k.tau, s.lambda + c * k.lambda, s.n + c * k.n};
  };
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = i + 1 == steps ? v - h : u + static_cast<double>(i) * h;
    const OdeState k1 = rhs(t, y);
    const OdeState k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const OdeState k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const OdeState k4 = rhs(t + h, axpy(y, h, k3));
    y.tau += h / 6.0 * (k1.tau + 2.0 * k2.tau + 2.0 * k3.tau + k4.tau);
    y.lambda += h / 6.0 * (k1.lambda + 2.0 * k2.lambda + 2.0 * k3.lambda + k4.lambda);
    y.n += h / 6.0 * (k1.n + 2.0 * k2.n + 2.0 * k3.n + k4.n);
  }
  return y;
}

}  // namespace

ModelTrajectory integrate_model(const PumpProfile& p, double chi, const std::vector<double>& t_grid,
                                const ModelIntegrationOptions& options) {
  require_chi(chi);
  if (t_grid.empty()) throw DomainError("time grid is empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    require_finite(t_grid[i], "grid time");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("time grid must be strictly increasing");
  }
  const double tau0 = tau_of_t(p, chi, t_grid.front());
  if (std::abs(tau0) >= kStartTolerance) {
    std::ostringstream msg;
    msg << "pump profile has not vanished before the first grid point (tau = " << tau0 << ")";
    throw DomainError(msg.str());
  }

  const double rate = chi * p.peak_magnitude();
  double h_max = options.max_substep;
  if (h_max <= 0.0) h_max = rate > 0.0 ? 2e-3 / rate : std::numeric_limits<double>::infinity();

  ModelTrajectory traj;
  traj.source = ModelTrajectory::Source::kOde;
  traj.times = t_grid;
  OdeState y{0.0, 0.0, 0.0};
  traj.tau.push_back(y.tau);
  traj.lambda.push_back(y.lambda);
  traj.n.push_back(y.n);

  const std::vector<double> breaks = p.breakpoints();
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    std::vector<double> cuts{t_grid[i]};
    for (double b : breaks) {
      if (b > t_grid[i] && b < t_grid[i + 1]) cuts.push_back(b);
    }
    cuts.push_back(t_grid[i + 1]);

    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double u = cuts[c], v = cuts[c + 1];
      const double span = v - u;
      const auto steps = static_cast<std::size_t>(
          std::max(1.0, std::isinf(h_max) ? 1.0 : std::ceil(span / h_max)));
      const OdeState coarse = rk4_piece(p, chi, u, v, steps, y);
      const OdeState fine = rk4_piece(p, chi, u, v, 2 * steps, y);
      const double err = std::max(std::abs(coarse.lambda - fine.lambda), std::abs(coarse.n - fine.n));
      if (!(err <= options.tolerance)) {
        std::ostringstream msg;
        msg << "model step-halving error " << err << " on [" << u << ", " << v
            << "] exceeds " << options.tolerance;
        throw StepSizeError(msg.str(), err);
      }
      y = fine;
    }
    traj.tau.push_back(y.tau);
    traj.lambda.push_back(y.lambda);
    traj.n.push_back(y.n);
  }
  return traj;
}

double twb_x_from_tau(double tau) {
  require_finite(tau, "tau");
  return std::tanh(tau);
}

double first_integral(double lambda, double n) { return (n + 1.0) * (n + 1.0) - 4.0 * lambda * lambda; }

double model_number_from_pair_amplitude(double lambda) {
  return std::sqrt(1.0 + 4.0 * lambda * lambda) - 1.0;
}

}  // namespace pnes
