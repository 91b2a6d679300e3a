#include "mixlag/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mixlag {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

void write_experiment_csv(const ExperimentReport& report,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < report.columns.size(); ++i)
    out << (i ? "," : "") << report.columns[i];
  out << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
}

void write_summary_json(const std::vector<ExperimentReport>& reports,
                        const DriverConfig& cfg, const std::string& path) {
  nlohmann::ordered_json doc;

  nlohmann::ordered_json config;
  for (const auto& [key, value] : cfg.as_entries()) config[key] = value;
  doc["config"] = config;

  bool all_pass = true;
  nlohmann::ordered_json experiments = nlohmann::ordered_json::array();
  for (const ExperimentReport& report : reports) {
    nlohmann::ordered_json exp;
    exp["name"] = report.name;
    exp["columns"] = report.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
      nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
      for (double v : row) jrow.push_back(v);
      rows.push_back(jrow);
    }
    exp["rows"] = rows;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckRow& check : report.checks) {
      nlohmann::ordered_json jc;
      jc["name"] = check.name;
      jc["comparator"] = check.comparator;
      jc["measured"] = check.measured;
      jc["bound"] = check.bound;
      jc["slack"] = check.slack;
      jc["pass"] = check.pass;
      checks.push_back(jc);
      all_pass = all_pass && check.pass;
    }
    exp["checks"] = checks;
    experiments.push_back(exp);
  }
  doc["experiments"] = experiments;
  doc["all_pass"] = all_pass;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace mixlag
