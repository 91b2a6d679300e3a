// Flat "key = value" configuration files with [section] headers; every key
// can be overridden from the command line as section.key=value.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixlag/scenario.hpp"

namespace mixlag {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class KeyValueConfig {
 public:
  static KeyValueConfig parse_string(const std::string& text);
  static KeyValueConfig parse_file(const std::string& path);

  // "section.key=value"
  void apply_override(const std::string& assignment);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

enum class ExperimentKind {
  Averaging,
  Taylor,
  SingularSlope,
  Transport,
  Areas,
  Cheeger,
  All
};

struct DriverConfig {
  // scenario
  FieldKind field = FieldKind::Shear;
  double amplitude = 0.5;
  BoundaryKind boundary = BoundaryKind::Periodic;
  int n = 64;
  int n_t = 64;
  bool anisotropic = false;
  double d1 = 1.0, d2 = 1.0;
  std::vector<double> epsilons = {4e-3, 2e-3, 1e-3, 5e-4};

  // experiment
  ExperimentKind kind = ExperimentKind::All;

  // checks
  double min_order = 1.8;
  double slope_rel_tol = 0.05;

  // output
  std::string out_dir = "out";
  unsigned long long seed = 42;
  int jobs = 1;
  bool export_matrices = false;

  static DriverConfig from(const KeyValueConfig& kv);
  void validate() const;  // throws ConfigError
  ScenarioSpec scenario_spec() const;
  std::map<std::string, std::string> as_entries() const;
};

std::string experiment_kind_name(ExperimentKind kind);

}  // namespace mixlag
