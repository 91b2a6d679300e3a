#include "mixlag/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mixlag {

namespace {

std::string trim(const std::string& s) {
  auto b = s.begin(), e = s.end();
  while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
  return std::string(b, e);
}

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (!section.empty()) key = section + "." + key;
    cfg.entries_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

void KeyValueConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must be key=value: " + assignment);
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (key.empty()) throw ConfigError("override has an empty key");
  entries_[key] = value;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' is not a number: " + it->second);
  }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const int v = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' is not an integer: " + it->second);
  }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "' is not a boolean: " + it->second);
}

std::vector<double> KeyValueConfig::get_double_list(
    const std::string& key, const std::vector<double>& fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<double> out;
  std::istringstream in(it->second);
  std::string tok;
  while (in >> tok) {
    if (!tok.empty() && tok.back() == ',') tok.pop_back();
    if (tok.empty()) continue;
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "' has a non-numeric entry: " + tok);
    }
  }
  if (out.empty())
    throw ConfigError("key '" + key + "' is an empty list");
  return out;
}

DriverConfig DriverConfig::from(const KeyValueConfig& kv) {
  DriverConfig cfg;

  const std::string field = kv.get_string("scenario.field", "shear");
  if (field == "zero")
    cfg.field = FieldKind::Zero;
  else if (field == "shear")
    cfg.field = FieldKind::Shear;
  else if (field == "rotating_double_gyre")
    cfg.field = FieldKind::RotatingDoubleGyre;
  else
    throw ConfigError("scenario.field must be zero | shear | rotating_double_gyre");

  cfg.amplitude = kv.get_double("scenario.amplitude", 0.5);

  std::string boundary = kv.get_string("scenario.boundary", "");
  if (boundary.empty())
    boundary = cfg.field == FieldKind::RotatingDoubleGyre ? "dirichlet" : "periodic";
  if (boundary == "dirichlet")
    cfg.boundary = BoundaryKind::Dirichlet;
  else if (boundary == "periodic")
    cfg.boundary = BoundaryKind::Periodic;
  else
    throw ConfigError("scenario.boundary must be dirichlet | periodic");

  cfg.n = kv.get_int("scenario.n", 64);
  cfg.n_t = kv.get_int("scenario.n_t", 64);

  const std::string diffusion = kv.get_string("scenario.diffusion", "isotropic");
  if (diffusion == "isotropic") {
    cfg.anisotropic = false;
  } else if (diffusion == "anisotropic") {
    cfg.anisotropic = true;
    cfg.d1 = kv.get_double("scenario.d1", 1.0);
    cfg.d2 = kv.get_double("scenario.d2", 1.0);
  } else {
    throw ConfigError("scenario.diffusion must be isotropic | anisotropic");
  }

  cfg.epsilons = kv.get_double_list("scenario.epsilons", cfg.epsilons);

  const std::string kind = kv.get_string("experiment.kind", "all");
  if (kind == "averaging")
    cfg.kind = ExperimentKind::Averaging;
  else if (kind == "taylor")
    cfg.kind = ExperimentKind::Taylor;
  else if (kind == "singular_slope")
    cfg.kind = ExperimentKind::SingularSlope;
  else if (kind == "transport")
    cfg.kind = ExperimentKind::Transport;
  else if (kind == "areas")
    cfg.kind = ExperimentKind::Areas;
  else if (kind == "cheeger")
    cfg.kind = ExperimentKind::Cheeger;
  else if (kind == "all")
    cfg.kind = ExperimentKind::All;
  else
    throw ConfigError("experiment.kind must be one of averaging | taylor | "
                      "singular_slope | transport | areas | cheeger | all");

  cfg.min_order = kv.get_double("check.min_order", cfg.min_order);
  cfg.slope_rel_tol = kv.get_double("check.slope_rel_tol", cfg.slope_rel_tol);

  cfg.out_dir = kv.get_string("output.dir", cfg.out_dir);
  cfg.seed = (unsigned long long)kv.get_int("output.seed", int(cfg.seed));
  cfg.jobs = kv.get_int("output.jobs", cfg.jobs);
  cfg.export_matrices = kv.get_bool("debug.export_matrices", false);

  cfg.validate();
  return cfg;
}

void DriverConfig::validate() const {
  if (!is_power_of_two(n) || n < 16 || n > 1024)
    throw ConfigError("scenario.n must be a power of two in [16, 1024]");
  if (!is_power_of_two(n_t) || n_t < 16 || n_t > 1024)
    throw ConfigError("scenario.n_t must be a power of two in [16, 1024]");
  if (epsilons.empty()) throw ConfigError("scenario.epsilons must not be empty");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0))
      throw ConfigError("scenario.epsilons entries must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw ConfigError("scenario.epsilons must be strictly decreasing");
  }
  if (anisotropic && (!(d1 > 0.0) || !(d2 > 0.0)))
    throw ConfigError("anisotropic diffusivities must be positive");
  if (field == FieldKind::RotatingDoubleGyre && boundary != BoundaryKind::Dirichlet)
    throw ConfigError("the rotating double gyre lives on the Dirichlet square");
  if (field == FieldKind::Shear && boundary != BoundaryKind::Periodic)
    throw ConfigError("the shear field lives on the torus");
  if (jobs < 1) throw ConfigError("output.jobs must be >= 1");
}

ScenarioSpec DriverConfig::scenario_spec() const {
  ScenarioSpec spec;
  switch (field) {
    case FieldKind::Zero:
      spec.field = VelocityField::zero(boundary == BoundaryKind::Periodic
                                           ? FlowDomain::TorusUnit
                                           : FlowDomain::SquareUnit);
      break;
    case FieldKind::Shear:
      spec.field = VelocityField::shear(amplitude);
      break;
    case FieldKind::RotatingDoubleGyre:
      spec.field = VelocityField::rotating_double_gyre();
      break;
    default:
      throw ConfigError("unsupported field kind");
  }
  spec.boundary = boundary;
  spec.n = n;
  spec.n_t = n_t;
  spec.ambient = anisotropic ? AmbientMetric::anisotropic(d1, d2)
                             : AmbientMetric::isotropic();
  return spec;
}

std::map<std::string, std::string> DriverConfig::as_entries() const {
  std::map<std::string, std::string> out;
  auto fmt = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  switch (field) {
    case FieldKind::Zero: out["scenario.field"] = "zero"; break;
    case FieldKind::Shear: out["scenario.field"] = "shear"; break;
    case FieldKind::RotatingDoubleGyre:
      out["scenario.field"] = "rotating_double_gyre";
      break;
    default: break;
  }
  out["scenario.amplitude"] = fmt(amplitude);
  out["scenario.boundary"] =
      boundary == BoundaryKind::Periodic ? "periodic" : "dirichlet";
  out["scenario.n"] = std::to_string(n);
  out["scenario.n_t"] = std::to_string(n_t);
  out["scenario.diffusion"] = anisotropic ? "anisotropic" : "isotropic";
  if (anisotropic) {
    out["scenario.d1"] = fmt(d1);
    out["scenario.d2"] = fmt(d2);
  }
  std::string eps;
  for (double e : epsilons) {
    if (!eps.empty()) eps += " ";
    eps += fmt(e);
  }
  out["scenario.epsilons"] = eps;
  out["experiment.kind"] = experiment_kind_name(kind);
  out["check.min_order"] = fmt(min_order);
  out["check.slope_rel_tol"] = fmt(slope_rel_tol);
  out["output.dir"] = out_dir;
  out["output.seed"] = std::to_string(seed);
  out["output.jobs"] = std::to_string(jobs);
  out["debug.export_matrices"] = export_matrices ? "true" : "false";
  return out;
}

std::string experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Averaging: return "averaging";
    case ExperimentKind::Taylor: return "taylor";
    case ExperimentKind::SingularSlope: return "singular_slope";
    case ExperimentKind::Transport: return "transport";
    case ExperimentKind::Areas: return "areas";
    case ExperimentKind::Cheeger: return "cheeger";
    case ExperimentKind::All: return "all";
  }
  return "unknown";
}

}  // namespace mixlag
