// Experiment orchestration: build the scenario, run the selected studies,
// write CSVs and the summary tree, and map outcomes to exit codes
// (0 pass, 1 check failure, 2 configuration error, 3 solver error).
#pragma once

#include <string>
#include <vector>

#include "mixlag/config.hpp"
#include "mixlag/experiments.hpp"

namespace mixlag {

struct RunResult {
  std::vector<ExperimentReport> reports;
  bool all_pass = true;
};

// Runs the selected experiments on a prepared scenario; experiment-level
// parallelism up to cfg.jobs with reports assembled in a fixed order.
RunResult run_experiments(const Scenario& scenario, const DriverConfig& cfg);

// Builds the scenario, runs the experiments, and (unless check_only) writes
// one CSV per experiment, summary.json, and any debug exports to cfg.out_dir.
RunResult run_config(const DriverConfig& cfg, bool check_only = false);

int exit_code_for(const RunResult& result);

}  // namespace mixlag
