// Deterministic result files: one CSV per experiment plus a summary JSON
// tree.  Timings are deliberately left out of the files so identical configs
// produce identical bytes.
#pragma once

#include <string>
#include <vector>

#include "mixlag/config.hpp"
#include "mixlag/experiments.hpp"

namespace mixlag {

void write_experiment_csv(const ExperimentReport& report,
                          const std::string& path);

void write_summary_json(const std::vector<ExperimentReport>& reports,
                        const DriverConfig& cfg, const std::string& path);

std::string format_double(double v);  // fixed %.17g rendering

}  // namespace mixlag
