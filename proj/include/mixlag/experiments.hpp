// Experiment drivers: each runs one study on a prepared scenario and returns
// a table plus the asserted checks with their measured slack.
#pragma once

#include <string>
#include <vector>

#include "mixlag/config.hpp"
#include "mixlag/scenario.hpp"

namespace mixlag {

struct CheckRow {
  std::string name;
  std::string comparator;  // "<=", ">=", "=="
  double measured = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // margin by which the comparison holds (negative: fails)
  bool pass = false;
};

struct ExperimentReport {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<CheckRow> checks;
  double wall_seconds = 0.0;  // printed to the log, never written to files

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

CheckRow check_le(const std::string& name, double measured, double bound);
CheckRow check_ge(const std::string& name, double measured, double bound);

ExperimentReport run_averaging(const Scenario& scenario, const DriverConfig& cfg);
ExperimentReport run_taylor(const Scenario& scenario, const DriverConfig& cfg);
ExperimentReport run_singular_slope(const Scenario& scenario,
                                    const DriverConfig& cfg);
ExperimentReport run_transport(const Scenario& scenario, const DriverConfig& cfg);
ExperimentReport run_areas(const Scenario& scenario, const DriverConfig& cfg);
ExperimentReport run_cheeger(const Scenario& scenario, const DriverConfig& cfg);
// Adjoint-identity and contraction checks with seeded random data.
ExperimentReport run_operator_checks(const Scenario& scenario,
                                     const DriverConfig& cfg);

}  // namespace mixlag
