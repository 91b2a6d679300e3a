// Command line entry point.
//   mixlag run <config>   [--jobs N] [--out DIR] [--override key=value ...]
//   mixlag check <config> [--jobs N] [--override key=value ...]
// Exit codes: 0 all checks pass, 1 check failure, 2 configuration error,
// 3 solver failure.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixlag/driver.hpp"
#include "mixlag/sparse.hpp"

namespace {

struct CliArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  int jobs = 0;          // 0: keep config value
  std::string out_dir;   // empty: keep config value
};

int execute(const CliArgs& args, bool check_only) {
  using namespace mixlag;
  KeyValueConfig kv = KeyValueConfig::parse_file(args.config_path);
  for (const std::string& assignment : args.overrides)
    kv.apply_override(assignment);
  DriverConfig cfg = DriverConfig::from(kv);
  if (args.jobs > 0) cfg.jobs = args.jobs;
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  cfg.validate();

  const RunResult result = run_config(cfg, check_only);

  for (const ExperimentReport& report : result.reports) {
    std::printf("experiment %-16s  %5.1fs\n", report.name.c_str(),
                report.wall_seconds);
    for (const CheckRow& check : report.checks)
      std::printf("  [%s] %-32s measured %.8g %s %.8g (slack %.3g)\n",
                  check.pass ? "PASS" : "FAIL", check.name.c_str(),
                  check.measured, check.comparator.c_str(), check.bound,
                  check.slack);
  }
  std::printf("%s\n", result.all_pass ? "ALL CHECKS PASSED" : "CHECK FAILURES");
  return exit_code_for(result);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian averaging diagnostics for advection-diffusion"};
  app.require_subcommand(1);

  CliArgs run_args, check_args;

  CLI::App* run = app.add_subcommand("run", "run experiments and write reports");
  run->add_option("config", run_args.config_path, "config file")->required();
  run->add_option("--jobs", run_args.jobs, "parallel experiments");
  run->add_option("--out", run_args.out_dir, "output directory");
  run->add_option("--override", run_args.overrides, "key=value overrides");

  CLI::App* check = app.add_subcommand("check", "run and assert only");
  check->add_option("config", check_args.config_path, "config file")->required();
  check->add_option("--jobs", check_args.jobs, "parallel experiments");
  check->add_option("--override", check_args.overrides, "key=value overrides");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return execute(run_args, false);
    return execute(check_args, true);
  } catch (const mixlag::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const mixlag::SolverError& e) {
    std::fprintf(stderr, "solver error: %s (residual %.3g)\n", e.what(),
                 e.residual);
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
