#include "fqnmr/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fqnmr/constants.hpp"
#include "fqnmr/errors.hpp"

namespace fqnmr {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Every accepted key with its default value. T2(n) is a comma-separated
// "n:value" list in seconds.
const std::map<std::string, std::string>& key_defaults() {
  static const std::map<std::string, std::string> defaults = {
      {"qubit.gap_hz", "5.37e9"},
      {"qubit.detuning_hz", "0.112e9"},
      {"qubit.persistent_current_a", "180e-9"},
      {"qubit.loop_side_m", "2e-6"},
      {"qubit.t2_star_s", "1e-6"},
      {"qubit.t2_dd_s",
       "1:5.00e-6,2:6.63e-6,4:8.91e-6,6:10.8e-6,8:12.4e-6,10:13.6e-6"},
      {"qubit.visibility", "0.79"},
      {"qubit.t_rep_s", "100e-6"},
      {"qubit.t_tot_s", "1.0"},
      {"environment.temperature_k", "20e-3"},
      {"environment.b_ex_t", "4e-3"},
      {"environment.gamma_hz_per_t", "42.6e6"},
      {"environment.linewidth_per_s", "1e4"},
      {"environment.relaxation_per_s", "auto"},  // auto = 1e-3 * linewidth
      {"drive.z_rf_m", "2e-6"},
      {"drive.reference", "edge"},  // edge | center
      {"drive.i_rf_a", "auto"},     // auto = optimize per run
      {"drive.r_ref_m", "1e-6"},
      {"sample.standoff_m", "0.1e-6"},
      {"sample.small_height_m", "0.1e-6"},
      {"sample.placement", "b"},   // a | b | c, small-sample queries
      {"sample.width_m", "2e-6"},  // small-sample width l
      {"protocol.scheme", "ramsey"},  // ramsey | echo | dd
      {"protocol.n_pulses", "1"},
      {"run.resolution_m", "auto"},  // auto = min(standoff, L/20, min_dim/4)
      {"run.threads", "0"},          // 0 = hardware concurrency
      {"run.out_dir", "out"},
      {"conventions.polarization", "exact"},     // exact | paper
      {"conventions.dd_dephasing", "total"},     // total | block
      {"conventions.side_edge", "z_parallel"},   // z_parallel | far_x_parallel
      {"conventions.fig5_normalization", "global"},  // global | per_column
      {"conventions.fig7_drive", "reoptimize"},      // reoptimize | freeze
  };
  return defaults;
}

}  // namespace

RunConfig::RunConfig() : values_(key_defaults()) {}

void RunConfig::load(const std::string& text) {
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!section.empty()) key = section + "." + key;
    if (key_defaults().find(key) == key_defaults().end())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    if (value.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty value for '" + key + "'");
    values_[key] = value;
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  load(buf.str());
}

void RunConfig::set(const std::string& dotted) {
  std::size_t eq = dotted.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + dotted + "' is not of the form "
                      "section.key=value");
  const std::string key = trim(dotted.substr(0, eq));
  const std::string value = trim(dotted.substr(eq + 1));
  if (key_defaults().find(key) == key_defaults().end())
    throw ConfigError("unknown key '" + key + "'");
  if (value.empty()) throw ConfigError("empty value for '" + key + "'");
  values_[key] = value;
}

const std::string& RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown key '" + key + "'");
  return it->second;
}

double RunConfig::get_number(const std::string& key) const {
  const std::string& s = get(key);
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used])))
      ++used;
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + s + "' is not a number");
  }
}

bool RunConfig::is_auto(const std::string& key) const {
  return get(key) == "auto";
}

std::string RunConfig::echo() const {
  std::ostringstream out;
  std::string section;
  for (const auto& [key, value] : values_) {
    const std::size_t dot = key.find('.');
    const std::string sec = key.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) out << "\n";
      out << "[" << sec << "]\n";
      section = sec;
    }
    out << key.substr(dot + 1) << " = " << value << "\n";
  }
  return out.str();
}

std::uint64_t RunConfig::hash() const {
  // Execution details (worker count, output path) do not affect results and
  // stay out of the hash, so runs with identical physics share it.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [key, value] : values_) {
    if (key == "run.threads" || key == "run.out_dir") continue;
    mix(key);
    mix("=");
    mix(value);
    mix("\n");
  }
  return h;
}

namespace {

std::map<int, double> parse_t2_table(const std::string& s) {
  std::map<int, double> table;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError("qubit.t2_dd_s: entries must be n:seconds");
    try {
      const int n = std::stoi(trim(item.substr(0, colon)));
      const double t2 = std::stod(trim(item.substr(colon + 1)));
      table[n] = t2;
    } catch (const std::exception&) {
      throw ConfigError("qubit.t2_dd_s: malformed entry '" + item + "'");
    }
  }
  if (table.empty()) throw ConfigError("qubit.t2_dd_s: empty table");
  return table;
}

template <typename Enum>
Enum parse_choice(const std::string& key, const std::string& value,
                  const std::map<std::string, Enum>& choices) {
  auto it = choices.find(value);
  if (it == choices.end())
    throw ConfigError("key '" + key + "': invalid value '" + value + "'");
  return it->second;
}

}  // namespace

Scenario RunConfig::scenario() const {
  Scenario sc;
  sc.qubit.gap = two_pi * get_number("qubit.gap_hz");
  sc.qubit.detuning = two_pi * get_number("qubit.detuning_hz");
  sc.qubit.persistent_current = get_number("qubit.persistent_current_a");
  sc.qubit.loop_side = get_number("qubit.loop_side_m");
  sc.qubit.t2_star = get_number("qubit.t2_star_s");
  sc.qubit.t2_dd = parse_t2_table(get("qubit.t2_dd_s"));
  sc.qubit.visibility = get_number("qubit.visibility");
  sc.qubit.t_rep = get_number("qubit.t_rep_s");
  sc.qubit.t_tot = get_number("qubit.t_tot_s");
  sc.qubit.validate();

  sc.env.temperature = get_number("environment.temperature_k");
  sc.env.b_ex = get_number("environment.b_ex_t");
  sc.env.gamma = two_pi * get_number("environment.gamma_hz_per_t");
  sc.env.linewidth = get_number("environment.linewidth_per_s");
  sc.env.relaxation = is_auto("environment.relaxation_per_s")
                          ? 1e-3 * sc.env.linewidth
                          : get_number("environment.relaxation_per_s");
  sc.env.validate();

  sc.z_rf = get_number("drive.z_rf_m");
  if (!(sc.z_rf > 0.0)) throw ConfigError("drive.z_rf_m must be > 0");
  sc.rf_reference = parse_choice(
      "drive.reference", get("drive.reference"),
      std::map<std::string, RfReference>{{"edge", RfReference::edge},
                                         {"center", RfReference::center}});
  sc.r_ref = get_number("drive.r_ref_m");
  if (!(sc.r_ref > 0.0)) throw ConfigError("drive.r_ref_m must be > 0");
  if (!is_auto("drive.i_rf_a")) {
    const double i = get_number("drive.i_rf_a");
    if (i < 0.0) throw ConfigError("drive.i_rf_a must be >= 0");
    sc.fixed_current = i;
  }

  sc.standoff = get_number("sample.standoff_m");
  sc.small_height = get_number("sample.small_height_m");
  if (!(sc.standoff > 0.0) || !(sc.small_height > 0.0))
    throw ConfigError("sample dimensions must be > 0");

  if (!is_auto("run.resolution_m")) {
    sc.resolution = get_number("run.resolution_m");
    if (!(sc.resolution > 0.0)) throw ConfigError("run.resolution_m must be > 0");
  }
  sc.threads = static_cast<int>(get_number("run.threads"));

  sc.polarization = parse_choice(
      "conventions.polarization", get("conventions.polarization"),
      std::map<std::string, PolarizationModel>{
          {"exact", PolarizationModel::exact},
          {"paper", PolarizationModel::paper}});
  sc.dd_convention = parse_choice(
      "conventions.dd_dephasing", get("conventions.dd_dephasing"),
      std::map<std::string, DephasingTime>{{"total", DephasingTime::total},
                                           {"block", DephasingTime::block}});
  sc.side_edge = parse_choice(
      "conventions.side_edge", get("conventions.side_edge"),
      std::map<std::string, SideEdgeChoice>{
          {"z_parallel", SideEdgeChoice::z_parallel},
          {"far_x_parallel", SideEdgeChoice::far_x_parallel}});
  return sc;
}

std::string default_config_text() { return RunConfig().echo(); }

}  // namespace fqnmr
