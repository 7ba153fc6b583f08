#include "pnes_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pnes::cli {
namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view k) {
  return !k.empty() && std::all_of(k.begin(), k.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

const std::vector<KeySpec> kEvolveExactKeys = {
    {"chi", true, "", "coupling constant chi >= 0"},
    {"alpha", true, "", "coherent pump amplitude (real)"},
    {"state", false, "vacuum", "initial pair state: vacuum | twb | tmc"},
    {"state_param", false, "0", "x for twb (0 <= x < 1), lambda for tmc (0 <= lambda <= 30)"},
    {"pump_dim", false, "auto", "pump cutoff, or auto"},
    {"signal_dim", true, "", "signal cutoff"},
    {"idler_dim", true, "", "idler cutoff"},
    {"dt", true, "", "time step"},
    {"steps", true, "", "number of steps"},
    {"record_every", false, "1", "record every n-th step"},
    {"integrator", false, "rk4", "rk4 | taylor4"},
};

const std::vector<KeySpec> kCompareKeys = {
    {"chi", true, "", "coupling constant chi >= 0"},
    {"alpha", true, "", "coherent pump amplitude (real)"},
    {"pump_dim", false, "auto", "pump cutoff, or auto"},
    {"signal_dim", true, "", "signal cutoff"},
    {"idler_dim", true, "", "idler cutoff"},
    {"dt", true, "", "time step"},
    {"steps", true, "", "number of steps"},
    {"record_every", false, "1", "record every n-th step"},
    {"integrator", false, "rk4", "rk4 | taylor4"},
};

const std::vector<KeySpec> kEvolveModelKeys = {
    {"chi", true, "", "coupling constant chi >= 0"},
    {"profile", true, "", "constant | rectangular | gaussian | sampled"},
    {"amplitude", false, "", "constant, rectangular: pump amplitude"},
    {"duration", false, "", "rectangular: pulse length"},
    {"peak", false, "", "gaussian: peak amplitude"},
    {"center", false, "", "gaussian: center time"},
    {"width", false, "", "gaussian: standard deviation"},
    {"sample_times", false, "", "sampled: comma-separated increasing times"},
    {"sample_values", false, "", "sampled: comma-separated amplitudes"},
    {"t_start", false, "0", "first grid time"},
    {"dt", true, "", "grid spacing"},
    {"steps", true, "", "number of grid intervals"},
    {"max_substep", false, "0", "largest ODE substep, 0 for automatic"},
    {"tolerance", false, "1e-8", "step-halving tolerance per grid interval"},
};

const std::vector<KeySpec> kDispersionKeys = {
    {"state", true, "", "twb | tmc"},
    {"state_param", true, "", "comma-separated x (twb) or lambda (tmc) values"},
    {"chi", true, "", "comma-separated chi values"},
    {"alpha", true, "", "comma-separated pump amplitudes"},
    {"tail", false, "1e-13", "tail mass bound used to pick cutoffs"},
};

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "evolve-exact") return Command::kEvolveExact;
  if (name == "evolve-model") return Command::kEvolveModel;
  if (name == "compare") return Command::kCompare;
  if (name == "dispersion") return Command::kDispersion;
  if (name == "scan") return Command::kScan;
  return std::nullopt;
}

std::string to_string(Command c) {
  switch (c) {
    case Command::kEvolveExact: return "evolve-exact";
    case Command::kEvolveModel: return "evolve-model";
    case Command::kCompare: return "compare";
    case Command::kDispersion: return "dispersion";
    case Command::kScan: return "scan";
  }
  return "unknown";
}

ValidationError::ValidationError(std::vector<std::string> messages)
    : std::runtime_error(join(messages, "; ")), messages_(std::move(messages)) {}

RawConfig parse_config_text(std::string_view text) {
  RawConfig out;
  std::vector<std::string> errors;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!valid_key(key)) {
      errors.push_back("line " + std::to_string(line_no) + ": invalid key '" + key + "'");
    } else if (value.empty()) {
      errors.push_back("line " + std::to_string(line_no) + ": empty value for '" + key + "'");
    } else if (!out.emplace(key, value).second) {
      errors.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  return out;
}

RawConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError({"cannot read config file '" + path.string() + "'"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

const std::vector<KeySpec>& schema(Command c) {
  switch (c) {
    case Command::kEvolveExact: return kEvolveExactKeys;
    case Command::kCompare: return kCompareKeys;
    case Command::kEvolveModel: return kEvolveModelKeys;
    case Command::kDispersion:
    case Command::kScan: return kDispersionKeys;
  }
  return kDispersionKeys;
}

ConfigReader::ConfigReader(Command c, const RawConfig& raw) : raw_(raw) {
  const auto& keys = schema(c);
  for (const auto& [key, value] : raw) {
    const bool known = std::any_of(keys.begin(), keys.end(), [&](const KeySpec& k) { return k.name == key; });
    if (!known) errors_.push_back("unknown key '" + key + "' for command " + to_string(c));
  }
  for (const auto& k : keys) {
    const auto it = raw.find(k.name);
    if (it != raw.end()) {
      echo_.emplace_back(k.name, it->second);
    } else if (k.required) {
      errors_.push_back("missing required key '" + k.name + "'");
    } else {
      raw_.emplace(k.name, k.fallback);
      if (!k.fallback.empty()) echo_.emplace_back(k.name, k.fallback);
    }
  }
}

const std::string* ConfigReader::lookup(const std::string& key) {
  const auto it = raw_.find(key);
  // Missing required keys were reported by the constructor.
  if (it == raw_.end() || it->second.empty()) return nullptr;
  return &it->second;
}

bool ConfigReader::present(const std::string& key) const {
  const auto it = raw_.find(key);
  return it != raw_.end() && !it->second.empty();
}

double ConfigReader::number(const std::string& key) {
  const std::string* v = lookup(key);
  if (v == nullptr) return std::nan("");
  double out = 0.0;
  const char* end = v->data() + v->size();
  const auto [ptr, ec] = std::from_chars(v->data(), end, out);
  if (ec != std::errc() || ptr != end) {
    errors_.push_back("'" + key + "' is not a number: '" + *v + "'");
    return std::nan("");
  }
  if (!std::isfinite(out)) {
    errors_.push_back("'" + key + "' must be finite");
    return std::nan("");
  }
  return out;
}

std::optional<std::size_t> ConfigReader::count(const std::string& key) {
  const std::string* v = lookup(key);
  if (v == nullptr) return std::nullopt;
  unsigned long long out = 0;
  const char* end = v->data() + v->size();
  const auto [ptr, ec] = std::from_chars(v->data(), end, out);
  if (ec != std::errc() || ptr != end) {
    errors_.push_back("'" + key + "' is not a nonnegative integer: '" + *v + "'");
    return std::nullopt;
  }
  return static_cast<std::size_t>(out);
}

std::string ConfigReader::text(const std::string& key) {
  const std::string* v = lookup(key);
  return v == nullptr ? std::string{} : *v;
}

std::vector<double> ConfigReader::numbers(const std::string& key) {
  const std::string* v = lookup(key);
  if (v == nullptr) return {};
  std::vector<double> out;
  std::string_view rest = *v;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(x)) {
      errors_.push_back("'" + key + "' has an invalid entry '" + std::string(item) + "'");
      return {};
    }
    out.push_back(x);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

void ConfigReader::set_echo(const std::string& key, const std::string& value) {
  for (auto& [k, v] : echo_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  echo_.emplace_back(key, value);
}

void ConfigReader::finish() const {
  if (!errors_.empty()) throw ValidationError(errors_);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

}  // namespace pnes::cli
