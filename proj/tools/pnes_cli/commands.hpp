#pragma once

#include <cstddef>
#include <ostream>
#include <string>

#include "pnes_cli/config.hpp"
#include "pnes_cli/output.hpp"

namespace pnes::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNumerical = 2,
  kExitPartialScan = 3,
};

/// Largest state vector a run may allocate.
inline constexpr std::size_t kMaxAmplitudes = 4'000'000;

struct RunOptions {
  std::size_t workers = 0;  ///< 0 selects the number of available processors
};

struct RunOutcome {
  Document doc;
  int exit_code = kExitOk;
};

// Each command validates the whole config before computing and throws
// ValidationError, pnes::DomainError or pnes::NumericalError.
RunOutcome cmd_evolve_exact(const RawConfig& raw);
RunOutcome cmd_evolve_model(const RawConfig& raw);
RunOutcome cmd_compare(const RawConfig& raw);
/// Any failing grid point fails the command.
RunOutcome cmd_dispersion(const RawConfig& raw, const RunOptions& opts = {});
/// Failing grid points become rows with status "error"; exit code 3 if any.
RunOutcome cmd_scan(const RawConfig& raw, const RunOptions& opts = {});

RunOutcome run_command(Command c, const RawConfig& raw, const RunOptions& opts = {});

/// Runs a command and maps exceptions to exit codes. On success or partial
/// scan failure `rendered` holds the output file; otherwise it is left empty
/// and a JSON error record goes to `err`.
int execute(Command c, const RawConfig& raw, const RunOptions& opts, Format format, std::string& rendered,
            std::ostream& err);

}  // namespace pnes::cli
