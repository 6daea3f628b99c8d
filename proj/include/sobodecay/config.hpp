#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sobodecay {

enum class ExperimentKind { heat, cns, kinetic, inequalities, fit };

/// Flat key = value experiment configuration. Unknown keys are rejected at
/// parse time; every accessor error carries the source line number.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::heat;
  std::map<std::string, std::pair<std::string, int>> entries;  // key -> (value, line)

  bool has(const std::string& key) const { return entries.count(key) > 0; }
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  /// Canonical text form (sorted keys) used for hashing and persistence.
  std::string canonical() const;
};

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

std::string to_string(ExperimentKind k);

}  // namespace sobodecay
