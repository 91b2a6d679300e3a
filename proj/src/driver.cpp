#include "mixlag/driver.hpp"

#include <filesystem>
#include <fstream>
#include <future>

#include "mixlag/report.hpp"

namespace mixlag {

namespace {

std::vector<ExperimentKind> expand(ExperimentKind kind) {
  if (kind != ExperimentKind::All) return {kind};
  return {ExperimentKind::Averaging,     ExperimentKind::Taylor,
          ExperimentKind::SingularSlope, ExperimentKind::Transport,
          ExperimentKind::Areas,         ExperimentKind::Cheeger};
}

ExperimentReport dispatch(ExperimentKind kind, const Scenario& scenario,
                          const DriverConfig& cfg) {
  switch (kind) {
    case ExperimentKind::Averaging: return run_averaging(scenario, cfg);
    case ExperimentKind::Taylor: return run_taylor(scenario, cfg);
    case ExperimentKind::SingularSlope: return run_singular_slope(scenario, cfg);
    case ExperimentKind::Transport: return run_transport(scenario, cfg);
    case ExperimentKind::Areas: return run_areas(scenario, cfg);
    case ExperimentKind::Cheeger: return run_cheeger(scenario, cfg);
    case ExperimentKind::All: break;
  }
  throw std::logic_error("dispatch: unexpanded experiment kind");
}

}  // namespace

RunResult run_experiments(const Scenario& scenario, const DriverConfig& cfg) {
  const std::vector<ExperimentKind> kinds = expand(cfg.kind);

  RunResult result;
  result.reports.resize(kinds.size() + 1);

  // Operator sanity checks always run; everything else may go wide.
  result.reports[0] = run_operator_checks(scenario, cfg);

  if (cfg.jobs <= 1) {
    for (std::size_t i = 0; i < kinds.size(); ++i)
      result.reports[i + 1] = dispatch(kinds[i], scenario, cfg);
  } else {
    std::vector<std::future<ExperimentReport>> futures(kinds.size());
    std::size_t next = 0;
    while (next < kinds.size()) {
      const std::size_t batch =
          std::min<std::size_t>(cfg.jobs, kinds.size() - next);
      for (std::size_t j = 0; j < batch; ++j)
        futures[next + j] =
            std::async(std::launch::async, [&, idx = next + j]() {
              return dispatch(kinds[idx], scenario, cfg);
            });
      for (std::size_t j = 0; j < batch; ++j)
        result.reports[next + j + 1] = futures[next + j].get();
      next += batch;
    }
  }

  for (const ExperimentReport& report : result.reports)
    result.all_pass = result.all_pass && report.all_pass();
  return result;
}

RunResult run_config(const DriverConfig& cfg, bool check_only) {
  const Scenario scenario(cfg.scenario_spec());
  RunResult result = run_experiments(scenario, cfg);

  if (!check_only) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    for (const ExperimentReport& report : result.reports)
      write_experiment_csv(report, cfg.out_dir + "/" + report.name + ".csv");
    write_summary_json(result.reports, cfg, cfg.out_dir + "/summary.json");

    if (cfg.export_matrices) {
      std::ofstream mass(cfg.out_dir + "/mass.triplets");
      write_triplets(scenario.M, mass);
      std::ofstream stiff(cfg.out_dir + "/stiffness_avg.triplets");
      write_triplets(scenario.K_bar, stiff);
    }
  }
  return result;
}

int exit_code_for(const RunResult& result) { return result.all_pass ? 0 : 1; }

}  // namespace mixlag
