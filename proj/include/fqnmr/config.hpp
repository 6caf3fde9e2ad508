#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "fqnmr/sensitivity.hpp"

namespace fqnmr {

// Flat, sectioned key-value configuration. Values are stored as strings and
// validated when the scenario is materialized; unknown keys are rejected at
// parse time.
class RunConfig {
 public:
  RunConfig();  // shipped defaults

  // Parses INI-style text ("[section]" headers, "key = value" lines, '#'
  // or ';' comments). Unknown keys raise ConfigError.
  void load(const std::string& text);
  void load_file(const std::string& path);

  // Applies one "section.key=value" override.
  void set(const std::string& dotted);

  const std::string& get(const std::string& key) const;  // "section.key"
  double get_number(const std::string& key) const;
  bool is_auto(const std::string& key) const;

  // Canonical resolved text: every key, sorted, defaults filled in.
  std::string echo() const;
  std::uint64_t hash() const;  // FNV-1a over echo()

  Scenario scenario() const;  // validates all physical invariants

 private:
  std::map<std::string, std::string> values_;
};

std::string default_config_text();

}  // namespace fqnmr
