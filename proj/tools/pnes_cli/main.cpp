#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "pnes/version.hpp"
#include "pnes_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace pnes::cli;

  CLI::App app{"Photon-number entangled state generation: exact three-mode simulator and mean-field model"};
  app.set_version_flag("--version", std::string(pnes::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::size_t workers = 0;

  const std::vector<std::pair<Command, const char*>> commands = {
      {Command::kEvolveExact, "exact three-mode evolution time series"},
      {Command::kEvolveModel, "mean-field model trajectory, closed form against ODE"},
      {Command::kCompare, "exact evolution against the model for a coherent pump and vacuum pairs"},
      {Command::kDispersion, "dispersion-rate reports over a parameter grid"},
      {Command::kScan, "dispersion-rate grid with per-row failure records"},
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(to_string(cmd), help);
    sub->add_option("--config", config_path, "key = value run configuration")->required();
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", workers, "worker threads for grid commands (default: all processors)")
        ->check(CLI::PositiveNumber);
    subs.emplace_back(sub, cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << error_record("validation", {e.what()});
    return kExitValidation;
  }

  Command cmd = Command::kEvolveExact;
  for (const auto& [sub, c] : subs) {
    if (sub->parsed()) cmd = c;
  }

  RawConfig raw;
  try {
    raw = load_config_file(config_path);
  } catch (const ValidationError& e) {
    std::cerr << error_record("validation", e.messages());
    return kExitValidation;
  }

  std::string rendered;
  const int code = execute(cmd, raw, RunOptions{workers}, format == "json" ? Format::kJson : Format::kCsv,
                           rendered, std::cerr);
  if (rendered.empty()) return code;

  if (out_path.empty()) {
    std::cout << rendered << std::flush;
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    out << rendered;
    out.close();
    if (!out) {
      std::cerr << error_record("io", {"cannot write '" + out_path + "'"});
      return kExitValidation;
    }
  }
  return code;
}
