#include "pnes_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>

#include "pnes/dispersion.hpp"
#include "pnes/errors.hpp"
#include "pnes/meanfield.hpp"
#include "pnes/observables.hpp"
#include "pnes/propagator.hpp"
#include "pnes/states.hpp"
#include "pnes_cli/worker_pool.hpp"

namespace pnes::cli {
namespace {

// Runs `check` and turns a DomainError into a recorded validation problem.
template <typename Fn>
void guard(ConfigReader& r, Fn&& check) {
  try {
    check();
  } catch (const DomainError& e) {
    r.fail(e.what());
  }
}

std::string size_problem(const TruncationConfig& cfg) {
  return "state space " + std::to_string(cfg.pump_dim()) + "x" + std::to_string(cfg.signal_dim()) + "x" +
         std::to_string(cfg.idler_dim()) + " exceeds " + std::to_string(kMaxAmplitudes) + " amplitudes";
}

bool too_large(std::size_t d0, std::size_t d1, std::size_t d2) {
  return d1 != 0 && d2 != 0 && (d0 > kMaxAmplitudes / d1 / d2 || d1 * d2 > kMaxAmplitudes);
}

double rel_dev(double x, double ref) { return ref == 0.0 ? std::abs(x) : std::abs(x - ref) / std::abs(ref); }

struct ExactSetup {
  PureState s0;
  EvolutionSpec spec;
  std::vector<std::string> warnings;
};

// Shared by evolve-exact and compare: coherent pump times a pair state.
std::optional<ExactSetup> read_exact(ConfigReader& r, bool with_state) {
  const double chi = r.number("chi");
  const double alpha = r.number("alpha");
  const std::string state = with_state ? r.text("state") : "vacuum";
  const double param = with_state ? r.number("state_param") : 0.0;
  const auto d1_in = r.count("signal_dim");
  const auto d2_in = r.count("idler_dim");
  const double dt = r.number("dt");
  const auto steps = r.count("steps");
  const auto record_every = r.count("record_every");
  const std::size_t d1 = d1_in.value_or(0), d2 = d2_in.value_or(0);
  const std::string integrator = r.text("integrator");

  std::size_t d0 = 0;
  if (r.text("pump_dim") == "auto") {
    if (std::isfinite(alpha)) {
      guard(r, [&] { d0 = pump_dimension(alpha); });
      if (d0 > 0) r.set_echo("pump_dim", std::to_string(d0));
    }
  } else {
    const auto d0_in = r.count("pump_dim");
    if (d0_in == std::size_t{0}) r.fail("pump_dim must be >= 1");
    d0 = d0_in.value_or(0);
  }

  if (d1_in == std::size_t{0}) r.fail("signal_dim must be >= 1");
  if (d2_in == std::size_t{0}) r.fail("idler_dim must be >= 1");
  if (steps == std::size_t{0}) r.fail("steps must be >= 1");

  EvolutionSpec spec;
  spec.params.chi = chi;
  spec.dt = dt;
  spec.steps = steps.value_or(0);
  spec.record_every = record_every.value_or(1);
  if (integrator == "rk4") {
    spec.method = Integrator::kRk4;
  } else if (integrator == "taylor4") {
    spec.method = Integrator::kTaylor4;
  } else {
    r.fail("integrator must be rk4 or taylor4, got '" + integrator + "'");
  }
  if (std::isfinite(chi)) guard(r, [&] { spec.params.validate(); });
  if (std::isfinite(dt) && dt <= 0.0) r.fail("dt must be positive");
  if (record_every == std::size_t{0}) r.fail("record_every must be >= 1");

  if (state != "vacuum" && state != "twb" && state != "tmc") {
    r.fail("state must be vacuum, twb or tmc, got '" + state + "'");
  } else if (state == "vacuum" && param != 0.0 && std::isfinite(param)) {
    r.fail("state_param does not apply to the vacuum state");
  } else if (state != "vacuum") {
    if (std::isfinite(param)) {
      guard(r, [&] { state == "twb" ? TwbParam{param}.validate() : TmcParam{param}.validate(); });
    }
    if (d1 != d2) r.fail("state " + state + " needs signal_dim == idler_dim");
  }
  if (too_large(d0, d1, d2)) {
    r.fail(size_problem(TruncationConfig(d0, d1, d2)));
    return std::nullopt;
  }
  if (!r.ok()) return std::nullopt;

  std::optional<ExactSetup> out;
  guard(r, [&] {
    const CoherentAmplitudes pump = coherent(alpha, d0);
    PureState pair = PureState::zero(TruncationConfig(1, d1, d2));
    if (state == "vacuum") {
      pair.amplitudes[0] = 1.0;
    } else if (state == "twb") {
      pair = twb(TwbParam{param}, d1);
    } else {
      pair = tmc(TmcParam{param}, d1);
    }
    PureState s0 = product_state(pump.amplitudes, pair);
    // The truncated coherent state is renormalized so evolve sees a unit norm.
    const double n = std::sqrt(s0.norm_squared());
    for (auto& a : s0.amplitudes) a /= n;
    std::vector<std::string> warnings;
    if (pump.truncation_warning) {
      warnings.push_back("coherent pump tail mass " + format_double(pump.tail_mass) + " at pump_dim " +
                         std::to_string(d0));
    }
    out = ExactSetup{std::move(s0), spec, std::move(warnings)};
  });
  return out;
}

Document start_document(Command c, const ConfigReader& r) {
  Document doc;
  doc.command = to_string(c);
  doc.config = r.echo();
  return doc;
}

struct GridPoint {
  double chi;
  double alpha;
  double param;
};

struct GridSetup {
  StateFamily family = StateFamily::kTwb;
  double tail = kDefaultDispersionTail;
  std::vector<GridPoint> points;
};

// Grid order: chi slowest, then alpha, then the state parameter.
GridSetup read_grid(ConfigReader& r) {
  GridSetup g;
  const std::string family = r.text("state");
  const auto chis = r.numbers("chi");
  const auto alphas = r.numbers("alpha");
  const auto params = r.numbers("state_param");
  g.tail = r.number("tail");
  if (!family.empty()) guard(r, [&] { g.family = parse_state_family(family); });
  if (std::isfinite(g.tail) && !(g.tail > 0.0 && g.tail <= kDispersionTailLimit)) {
    r.fail("tail must satisfy 0 < tail <= " + format_double(kDispersionTailLimit));
  }
  for (double chi : chis) guard(r, [&] { HamiltonianParams{chi}.validate(); });
  for (double p : params) {
    guard(r, [&] {
      if (g.family == StateFamily::kTwb) {
        TwbParam{p}.validate();
      } else {
        TmcParam{p}.validate();
      }
    });
  }
  for (double chi : chis) {
    for (double alpha : alphas) {
      for (double p : params) g.points.push_back({chi, alpha, p});
    }
  }
  return g;
}

const std::vector<std::string> kDispersionColumns = {
    "state",           "state_param",      "chi",              "alpha",
    "pump_dim",        "pair_dim",         "rate_exact_fd",    "rate_closed_exact",
    "rate_closed_model", "rate_model_chain", "rate_diag_simple", "rel_err_exact",
    "model_exact_ratio", "ratios_defined",
};

std::vector<Cell> report_row(const DispersionReport& rep, const TruncationConfig& t) {
  return {to_string(rep.state_family),
          rep.state_param,
          rep.chi,
          rep.alpha,
          static_cast<double>(t.pump_dim()),
          static_cast<double>(t.signal_dim()),
          rep.rate_exact_fd,
          rep.rate_closed_exact,
          rep.rate_closed_model,
          rep.rate_model_chain,
          rep.rate_diag_simple,
          rep.rel_err_exact,
          rep.model_exact_ratio,
          rep.ratios_defined ? 1.0 : 0.0};
}

struct RowResult {
  std::vector<Cell> cells;
  std::exception_ptr error;
  std::string message;
};

std::vector<RowResult> run_grid(const GridSetup& g, const RunOptions& opts) {
  std::vector<RowResult> rows(g.points.size());
  parallel_for(g.points.size(), opts.workers == 0 ? default_workers() : opts.workers, [&](std::size_t i) {
    const GridPoint& p = g.points[i];
    try {
      const TruncationConfig t = default_truncation(g.family, p.param, p.alpha, g.tail);
      if (too_large(t.pump_dim(), t.signal_dim(), t.idler_dim())) throw DomainError(size_problem(t));
      rows[i].cells = report_row(build_report(g.family, p.param, p.chi, p.alpha, t), t);
    } catch (const std::exception& e) {
      rows[i].error = std::current_exception();
      rows[i].message = e.what();
    }
  });
  return rows;
}

}  // namespace

RunOutcome cmd_evolve_exact(const RawConfig& raw) {
  ConfigReader r(Command::kEvolveExact, raw);
  auto setup = read_exact(r, true);
  r.finish();

  const ExactTrajectory traj = evolve(setup->s0, setup->spec);
  RunOutcome out{start_document(Command::kEvolveExact, r), kExitOk};
  out.doc.warnings = setup->warnings;
  out.doc.warnings.insert(out.doc.warnings.end(), traj.warnings.begin(), traj.warnings.end());
  out.doc.columns = {"t",         "re_pair_amp", "im_pair_amp", "total_n",     "diff_n", "pump_quad",
                     "disp_plus", "disp_minus",  "conserved_k", "norm",        "leakage"};
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const ObservableSet& o = traj.observables[k];
    out.doc.rows.push_back({traj.times[k], o.pair_amp.real(), o.pair_amp.imag(), o.total_n, o.diff_n,
                            o.pump_quad, o.disp_plus, o.disp_minus, o.conserved_k, o.norm,
                            traj.leakage_history[k]});
  }
  return out;
}

RunOutcome cmd_compare(const RawConfig& raw) {
  ConfigReader r(Command::kCompare, raw);
  auto setup = read_exact(r, false);
  r.finish();

  const ExactTrajectory traj = evolve(setup->s0, setup->spec);
  const double alpha = r.number("alpha");
  const ModelTrajectory model =
      closed_form_trajectory(PumpProfile::constant(alpha), setup->spec.params.chi, traj.times);

  RunOutcome out{start_document(Command::kCompare, r), kExitOk};
  out.doc.warnings = setup->warnings;
  out.doc.warnings.insert(out.doc.warnings.end(), traj.warnings.begin(), traj.warnings.end());
  out.doc.columns = {"t",           "n_exact",     "n_model",          "n_rel_dev",
                     "pair_amp_abs", "lambda_model", "pair_amp_rel_dev", "leakage"};
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const ObservableSet& o = traj.observables[k];
    const double amp = std::abs(o.pair_amp);
    out.doc.rows.push_back({traj.times[k], o.total_n, model.n[k], rel_dev(o.total_n, model.n[k]), amp,
                            model.lambda[k], rel_dev(amp, std::abs(model.lambda[k])),
                            traj.leakage_history[k]});
  }
  return out;
}

RunOutcome cmd_evolve_model(const RawConfig& raw) {
  ConfigReader r(Command::kEvolveModel, raw);
  const double chi = r.number("chi");
  const std::string kind = r.text("profile");
  const double t_start = r.number("t_start");
  const double dt = r.number("dt");
  const auto steps_in = r.count("steps");
  const std::size_t steps = steps_in.value_or(0);
  ModelIntegrationOptions opts;
  opts.max_substep = r.number("max_substep");
  opts.tolerance = r.number("tolerance");

  const std::vector<std::pair<std::string, std::vector<std::string>>> profile_keys = {
      {"constant", {"amplitude"}},
      {"rectangular", {"amplitude", "duration"}},
      {"gaussian", {"peak", "center", "width"}},
      {"sampled", {"sample_times", "sample_values"}},
  };
  const std::vector<std::string>* wanted = nullptr;
  for (const auto& [name, keys] : profile_keys) {
    if (name == kind) wanted = &keys;
  }
  if (wanted == nullptr && !kind.empty()) {
    r.fail("profile must be constant, rectangular, gaussian or sampled, got '" + kind + "'");
  }
  if (wanted != nullptr) {
    for (const char* k : {"amplitude", "duration", "peak", "center", "width", "sample_times", "sample_values"}) {
      const bool needed = std::find(wanted->begin(), wanted->end(), k) != wanted->end();
      if (needed && !r.present(k)) r.fail("profile " + kind + " needs key '" + k + "'");
      if (!needed && r.present(k)) r.fail("key '" + std::string(k) + "' does not apply to profile " + kind);
    }
  }

  std::optional<PumpProfile> profile;
  if (wanted != nullptr && r.ok()) {
    guard(r, [&] {
      if (kind == "constant") {
        profile = PumpProfile::constant(r.number("amplitude"));
      } else if (kind == "rectangular") {
        profile = PumpProfile::rectangular(r.number("amplitude"), r.number("duration"));
      } else if (kind == "gaussian") {
        profile = PumpProfile::gaussian(r.number("peak"), r.number("center"), r.number("width"));
      } else {
        profile = PumpProfile::sampled(r.numbers("sample_times"), r.numbers("sample_values"));
      }
    });
  }
  if (std::isfinite(chi) && chi < 0.0) r.fail("chi must be nonnegative");
  if (std::isfinite(dt) && dt <= 0.0) r.fail("dt must be positive");
  if (steps_in == std::size_t{0}) r.fail("steps must be >= 1");
  if (std::isfinite(opts.max_substep) && opts.max_substep < 0.0) r.fail("max_substep must be >= 0");
  if (std::isfinite(opts.tolerance) && opts.tolerance <= 0.0) r.fail("tolerance must be positive");
  if (steps > kMaxAmplitudes) r.fail("steps must be <= " + std::to_string(kMaxAmplitudes));

  std::vector<double> grid;
  if (r.ok() && profile) {
    for (std::size_t k = 0; k <= steps; ++k) grid.push_back(t_start + static_cast<double>(k) * dt);
    if (const auto* s = std::get_if<PumpProfile::Sampled>(&profile->variant())) {
      if (grid.front() < s->times.front() || grid.back() > s->times.back()) {
        r.fail("time grid [" + format_double(grid.front()) + ", " + format_double(grid.back()) +
               "] leaves the sampled support");
      }
    }
    if (r.ok()) {
      guard(r, [&] {
        if (std::abs(tau_of_t(*profile, chi, t_start)) >= 1e-14) {
          throw DomainError("pump has not vanished before t_start");
        }
      });
    }
  }
  r.finish();

  const ModelTrajectory closed = closed_form_trajectory(*profile, chi, grid);
  const ModelTrajectory ode = integrate_model(*profile, chi, grid, opts);
  RunOutcome out{start_document(Command::kEvolveModel, r), kExitOk};
  out.doc.columns = {"t",     "a",          "tau_closed", "lambda_closed", "n_closed", "tau_ode",
                     "lambda_ode", "n_ode", "tau_diff",   "lambda_diff",   "n_diff"};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out.doc.rows.push_back({grid[k], profile->amplitude(grid[k]), closed.tau[k], closed.lambda[k], closed.n[k],
                            ode.tau[k], ode.lambda[k], ode.n[k], ode.tau[k] - closed.tau[k],
                            ode.lambda[k] - closed.lambda[k], ode.n[k] - closed.n[k]});
  }
  return out;
}

RunOutcome cmd_dispersion(const RawConfig& raw, const RunOptions& opts) {
  ConfigReader r(Command::kDispersion, raw);
  const GridSetup g = read_grid(r);
  if (r.ok()) {
    for (const auto& p : g.points) {
      guard(r, [&] {
        const TruncationConfig t = default_truncation(g.family, p.param, p.alpha, g.tail);
        if (too_large(t.pump_dim(), t.signal_dim(), t.idler_dim())) r.fail(size_problem(t));
      });
    }
  }
  r.finish();

  auto rows = run_grid(g, opts);
  for (const auto& row : rows) {
    if (row.error) std::rethrow_exception(row.error);  // first failure in grid order
  }
  RunOutcome out{start_document(Command::kDispersion, r), kExitOk};
  out.doc.columns = kDispersionColumns;
  for (auto& row : rows) out.doc.rows.push_back(std::move(row.cells));
  return out;
}

RunOutcome cmd_scan(const RawConfig& raw, const RunOptions& opts) {
  ConfigReader r(Command::kScan, raw);
  const GridSetup g = read_grid(r);
  r.finish();

  auto rows = run_grid(g, opts);
  RunOutcome out{start_document(Command::kScan, r), kExitOk};
  out.doc.columns = kDispersionColumns;
  out.doc.columns.push_back("status");
  out.doc.columns.push_back("error");
  const double nan = std::nan("");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    if (row.error) {
      const GridPoint& p = g.points[i];
      std::vector<Cell> cells = {to_string(g.family), p.param, p.chi, p.alpha};
      cells.resize(kDispersionColumns.size(), nan);
      cells.push_back(std::string("error"));
      cells.push_back(row.message);
      out.doc.rows.push_back(std::move(cells));
      out.exit_code = kExitPartialScan;
    } else {
      row.cells.push_back(std::string("ok"));
      row.cells.push_back(std::string());
      out.doc.rows.push_back(std::move(row.cells));
    }
  }
  return out;
}

RunOutcome run_command(Command c, const RawConfig& raw, const RunOptions& opts) {
  switch (c) {
    case Command::kEvolveExact: return cmd_evolve_exact(raw);
    case Command::kEvolveModel: return cmd_evolve_model(raw);
    case Command::kCompare: return cmd_compare(raw);
    case Command::kDispersion: return cmd_dispersion(raw, opts);
    case Command::kScan: return cmd_scan(raw, opts);
  }
  throw ValidationError({"unknown command"});
}

int execute(Command c, const RawConfig& raw, const RunOptions& opts, Format format, std::string& rendered,
            std::ostream& err) {
  rendered.clear();
  try {
    RunOutcome out = run_command(c, raw, opts);
    rendered = render(out.doc, format);
    if (out.exit_code == kExitPartialScan) {
      std::vector<std::string> failed;
      const auto status = out.doc.columns.size() - 2;
      for (std::size_t i = 0; i < out.doc.rows.size(); ++i) {
        if (std::get<std::string>(out.doc.rows[i][status]) == "error") {
          failed.push_back("row " + std::to_string(i) + ": " + std::get<std::string>(out.doc.rows[i][status + 1]));
        }
      }
      err << error_record("partial_scan", failed);
    }
    return out.exit_code;
  } catch (const ValidationError& e) {
    err << error_record("validation", e.messages());
    return kExitValidation;
  } catch (const DomainError& e) {
    err << error_record("validation", {e.what()});
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << error_record("numerical", {e.what()});
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << error_record("numerical", {e.what()});
    return kExitNumerical;
  }
}

}  // namespace pnes::cli
