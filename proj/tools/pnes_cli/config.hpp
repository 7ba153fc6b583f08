#pragma once

// Flat `key = value` run configuration. Blank lines and lines starting with '#'
// are ignored; every key may appear once. Each command accepts a fixed key set
// and anything else is rejected, so a misspelled parameter never falls back to
// a default silently.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pnes::cli {

enum class Command { kEvolveExact, kEvolveModel, kCompare, kDispersion, kScan };

std::optional<Command> parse_command(std::string_view name);
std::string to_string(Command c);

/// Carries every problem found, not just the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const noexcept { return messages_; }

 private:
  std::vector<std::string> messages_;
};

using RawConfig = std::map<std::string, std::string>;

/// Throws ValidationError listing malformed lines and repeated keys.
RawConfig parse_config_text(std::string_view text);
RawConfig load_config_file(const std::filesystem::path& path);

struct KeySpec {
  std::string name;
  bool required;
  std::string fallback;  ///< value used when absent and not required
  std::string help;
};

/// Keys accepted by a command, in echo order.
const std::vector<KeySpec>& schema(Command c);

/// Collects typed values and problems from a raw config without throwing until
/// finish(). The echo holds every schema key with its effective value.
class ConfigReader {
 public:
  ConfigReader(Command c, const RawConfig& raw);

  double number(const std::string& key);
  /// Nonnegative integer; nullopt when absent or malformed.
  std::optional<std::size_t> count(const std::string& key);
  std::string text(const std::string& key);
  /// Comma-separated list of numbers.
  std::vector<double> numbers(const std::string& key);
  bool present(const std::string& key) const;

  void fail(const std::string& message) { errors_.push_back(message); }
  /// Replaces the echoed value, e.g. once an automatic default is resolved.
  void set_echo(const std::string& key, const std::string& value);

  const std::vector<std::pair<std::string, std::string>>& echo() const noexcept { return echo_; }
  bool ok() const noexcept { return errors_.empty(); }
  /// Throws ValidationError when any problem was recorded.
  void finish() const;

 private:
  const std::string* lookup(const std::string& key);

  RawConfig raw_;
  std::vector<std::pair<std::string, std::string>> echo_;
  std::vector<std::string> errors_;
};

/// Locale-independent, 17 significant digits.
std::string format_double(double v);

}  // namespace pnes::cli
