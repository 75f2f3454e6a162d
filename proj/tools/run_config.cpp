#include "run_config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "torcyl/bessel.hpp"
#include "torcyl/errors.hpp"

namespace torcyl::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw ValidationError("config: key '" + key + "' " + why);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) bad_key(key, "expects a number, got '" + value + "'");
    return v;
  } catch (const std::logic_error&) {
    bad_key(key, "expects a number, got '" + value + "'");
  }
}

int to_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) bad_key(key, "expects an integer, got '" + value + "'");
    return v;
  } catch (const std::logic_error&) {
    bad_key(key, "expects an integer, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad_key(key, "expects true/false, got '" + value + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "lambda_re") cfg.lambda_re = to_double(key, value);
  else if (key == "lambda_im") cfg.lambda_im = to_double(key, value);
  else if (key == "mu_re") cfg.mu_re = to_double(key, value);
  else if (key == "mu_im") cfg.mu_im = to_double(key, value);
  else if (key == "rho") cfg.rho = to_double(key, value);
  else if (key == "omega") cfg.omega = to_double(key, value);
  else if (key == "radius") cfg.radius = to_double(key, value);
  else if (key == "height") cfg.height = to_double(key, value);
  else if (key == "elastic_limit") cfg.elastic_limit = to_bool(key, value);
  else if (key == "torque") cfg.torque = value;
  else if (key == "torque_amplitude") cfg.torque_amplitude = to_double(key, value);
  else if (key == "torque_mode") cfg.torque_mode = to_int(key, value);
  else if (key == "torque_csv") cfg.torque_csv = value;
  else if (key == "truncation") cfg.truncation = to_int(key, value);
  else if (key == "grid_n") cfg.grid_n = to_int(key, value);
  else if (key == "fd_step_rel") cfg.fd_step_rel = to_double(key, value);
  else if (key == "margin_steps") cfg.margin_steps = to_int(key, value);
  else if (key == "surface_n") cfg.surface_n = to_int(key, value);
  else if (key == "psi_nr") cfg.psi_nr = to_int(key, value);
  else if (key == "psi_nz") cfg.psi_nz = to_int(key, value);
  else if (key == "gate_pde") cfg.gate_pde = to_double(key, value);
  else if (key == "gate_boundary") cfg.gate_boundary = to_double(key, value);
  else if (key == "gate_top") cfg.gate_top = to_double(key, value);
  else if (key == "gate_helmholtz") cfg.gate_helmholtz = to_double(key, value);
  else bad_key(key, "is not a recognized configuration key");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config: line " + std::to_string(lineno) +
                            " is not 'key = value': '" + t + "'");
    }
    apply_key(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

RunConfig parse_config_json(const json& j) {
  RunConfig cfg;
  if (!j.is_object()) throw ValidationError("config: JSON root must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "torque_r" || key == "torque_f") {
      if (!value.is_array()) bad_key(key, "expects an array of numbers");
      std::vector<double>& dst = key == "torque_r" ? cfg.torque_r : cfg.torque_f;
      dst.clear();
      for (const auto& v : value) {
        if (!v.is_number()) bad_key(key, "expects an array of numbers");
        dst.push_back(v.get<double>());
      }
      continue;
    }
    if (value.is_string()) {
      apply_key(cfg, key, value.get<std::string>());
    } else if (value.is_boolean()) {
      apply_key(cfg, key, value.get<bool>() ? "true" : "false");
    } else if (value.is_number()) {
      apply_key(cfg, key, fmt(value.get<double>()));
    } else {
      bad_key(key, "has an unsupported JSON type");
    }
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  RunConfig cfg;
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }
    cfg = parse_config_json(j);
  } else {
    cfg = parse_config_text(text);
  }
  if (cfg.torque == "sampled" && !cfg.torque_csv.empty() && cfg.torque_r.empty()) {
    load_torque_csv(cfg, cfg.torque_csv);
  }
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json j{{"lambda_re", cfg.lambda_re},
         {"lambda_im", cfg.lambda_im},
         {"mu_re", cfg.mu_re},
         {"mu_im", cfg.mu_im},
         {"rho", cfg.rho},
         {"omega", cfg.omega},
         {"radius", cfg.radius},
         {"height", cfg.height},
         {"elastic_limit", cfg.elastic_limit},
         {"torque", cfg.torque},
         {"torque_amplitude", cfg.torque_amplitude},
         {"torque_mode", cfg.torque_mode},
         {"truncation", cfg.truncation},
         {"grid_n", cfg.grid_n},
         {"fd_step_rel", cfg.fd_step_rel},
         {"margin_steps", cfg.margin_steps},
         {"surface_n", cfg.surface_n},
         {"psi_nr", cfg.psi_nr},
         {"psi_nz", cfg.psi_nz},
         {"gate_pde", cfg.gate_pde},
         {"gate_boundary", cfg.gate_boundary},
         {"gate_top", cfg.gate_top},
         {"gate_helmholtz", cfg.gate_helmholtz}};
  if (!cfg.torque_csv.empty()) j["torque_csv"] = cfg.torque_csv;
  if (!cfg.torque_r.empty()) {
    j["torque_r"] = cfg.torque_r;
    j["torque_f"] = cfg.torque_f;
  }
  return j;
}

void load_torque_csv(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open torque CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("torque CSV: empty file");
  if (trim(line) != "r,f") {
    throw ValidationError("torque CSV: header must be exactly 'r,f'");
  }
  cfg.torque_r.clear();
  cfg.torque_f.clear();
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream row(t);
    std::string cell;
    while (std::getline(row, cell, ',')) cols.push_back(trim(cell));
    if (cols.size() != 2) {
      throw ValidationError("torque CSV: line " + std::to_string(lineno) +
                            " has " + std::to_string(cols.size()) +
                            " columns, expected 2 (r,f)");
    }
    cfg.torque_r.push_back(to_double("r", cols[0]));
    cfg.torque_f.push_back(to_double("f", cols[1]));
  }
  if (cfg.torque_r.size() < 2) {
    throw ValidationError("torque CSV: need at least two sample rows");
  }
}

MaterialParams material_from(const RunConfig& cfg) {
  return MaterialParams::create({cfg.lambda_re, cfg.lambda_im},
                                {cfg.mu_re, cfg.mu_im}, cfg.rho, cfg.omega,
                                cfg.elastic_limit);
}

CylinderGeometry geometry_from(const RunConfig& cfg) {
  return CylinderGeometry::create(cfg.radius, cfg.height);
}

TorqueProfile torque_from(const RunConfig& cfg) {
  if (cfg.torque == "zero") return TorqueProfile::zero();
  if (cfg.torque == "uniform") return TorqueProfile::uniform(cfg.torque_amplitude);
  if (cfg.torque == "linear") return TorqueProfile::linear(cfg.torque_amplitude, cfg.radius);
  if (cfg.torque == "parabolic") return TorqueProfile::parabolic(cfg.torque_amplitude, cfg.radius);
  if (cfg.torque == "mode") {
    if (cfg.torque_mode < 1) {
      throw ValidationError("config: torque_mode must be >= 1");
    }
    std::vector<double> roots;
    if (cfg.torque_mode > 1) roots = modal_roots(cfg.torque_mode - 1);
    return TorqueProfile::mode(make_mode(cfg.torque_mode, roots, cfg.radius),
                               cfg.torque_amplitude);
  }
  if (cfg.torque == "sampled") {
    if (cfg.torque_r.empty()) {
      throw ValidationError(
          "config: torque = sampled needs torque_csv or inline torque_r/torque_f");
    }
    for (double r : cfg.torque_r) {
      if (r < 0.0 || r > cfg.radius) {
        throw ValidationError("torque CSV: sample r outside [0, radius]");
      }
    }
    return TorqueProfile::sampled(cfg.torque_r, cfg.torque_f);
  }
  throw ValidationError("config: unknown torque kind '" + cfg.torque + "'");
}

VerifyGrid grid_from(const RunConfig& cfg) {
  VerifyGrid grid;
  grid.pde_n = cfg.grid_n;
  grid.fd_step = cfg.fd_step_rel * std::min(cfg.radius, cfg.height);
  grid.margin_steps = cfg.margin_steps;
  grid.surface_n = cfg.surface_n;
  grid.psi_nr = cfg.psi_nr;
  grid.psi_nz = cfg.psi_nz;
  return grid;
}

json solution_to_json(const RunConfig& cfg, const ModalSolution& sol) {
  json modes = json::array();
  for (const ModalRoot& m : sol.modes) {
    modes.push_back({{"n", m.n},
                     {"k", m.k_n},
                     {"c", m.c_n},
                     {"gamma_re", m.gamma_n.real()},
                     {"gamma_im", m.gamma_n.imag()}});
  }
  json coeffs_re = json::array(), coeffs_im = json::array();
  for (const Complex& f : sol.spectrum.coeffs) {
    coeffs_re.push_back(f.real());
    coeffs_im.push_back(f.imag());
  }
  return json{{"kind", "torsion-solution"},
              {"schema_version", 1},
              {"config", config_to_json(cfg)},
              {"material",
               {{"lambda_re", sol.material.lambda.real()},
                {"lambda_im", sol.material.lambda.imag()},
                {"mu_re", sol.material.mu.real()},
                {"mu_im", sol.material.mu.imag()},
                {"rho", sol.material.rho},
                {"omega", sol.material.omega},
                {"elastic_limit", sol.material.elastic_limit}}},
              {"geometry",
               {{"radius", sol.geometry.radius}, {"height", sol.geometry.height}}},
              {"modes", modes},
              {"spectrum",
               {{"coeffs_re", coeffs_re},
                {"coeffs_im", coeffs_im},
                {"h_half_diag", sol.spectrum.h_half_diag},
                {"decay_exponent", sol.spectrum.decay_exponent},
                {"boundary_mismatch", sol.spectrum.boundary_mismatch}}},
              {"amplitude_bounds", sol.amplitude_bounds},
              {"suggested_truncation", sol.suggested_truncation}};
}

ModalSolution solution_from_json(const json& j, RunConfig* cfg_out) {
  if (!j.is_object() || j.value("kind", "") != "torsion-solution") {
    throw ValidationError("solution file: not a torsion-solution document");
  }
  if (j.value("schema_version", 0) != 1) {
    throw ValidationError("solution file: unsupported schema_version");
  }
  const RunConfig cfg = parse_config_json(j.at("config"));
  if (cfg_out) *cfg_out = cfg;

  ModalSolution sol;
  const json& m = j.at("material");
  sol.material.lambda = {m.at("lambda_re").get<double>(), m.at("lambda_im").get<double>()};
  sol.material.mu = {m.at("mu_re").get<double>(), m.at("mu_im").get<double>()};
  sol.material.rho = m.at("rho").get<double>();
  sol.material.omega = m.at("omega").get<double>();
  sol.material.elastic_limit = m.at("elastic_limit").get<bool>();
  const json& g = j.at("geometry");
  sol.geometry.radius = g.at("radius").get<double>();
  sol.geometry.height = g.at("height").get<double>();
  for (const json& mode : j.at("modes")) {
    sol.modes.push_back({mode.at("n").get<int>(), mode.at("k").get<double>(),
                         mode.at("c").get<double>(),
                         {mode.at("gamma_re").get<double>(),
                          mode.at("gamma_im").get<double>()}});
  }
  const json& s = j.at("spectrum");
  const auto& re = s.at("coeffs_re");
  const auto& im = s.at("coeffs_im");
  if (re.size() != im.size() || re.size() != sol.modes.size()) {
    throw ValidationError("solution file: spectrum and modes disagree on truncation");
  }
  for (size_t i = 0; i < re.size(); ++i) {
    sol.spectrum.coeffs.emplace_back(re[i].get<double>(), im[i].get<double>());
  }
  sol.spectrum.h_half_diag = s.at("h_half_diag").get<double>();
  sol.spectrum.decay_exponent = s.at("decay_exponent").get<double>();
  sol.spectrum.boundary_mismatch = s.at("boundary_mismatch").get<double>();
  sol.amplitude_bounds = j.at("amplitude_bounds").get<std::vector<double>>();
  sol.suggested_truncation = j.at("suggested_truncation").get<int>();
  return sol;
}

json report_to_json(const ResidualReport& report) {
  json bc;
  for (const auto& [name, value] : report.bc_residuals) bc[name] = value;
  return json{{"kind", "torsion-verify-report"},
              {"schema_version", 1},
              {"grid",
               {{"pde_n", report.grid.pde_n},
                {"fd_step", report.grid.fd_step},
                {"margin_steps", report.grid.margin_steps},
                {"surface_n", report.grid.surface_n},
                {"psi_nr", report.grid.psi_nr},
                {"psi_nz", report.grid.psi_nz}}},
              {"pde_residual", report.pde_residual},
              {"bc_residuals", bc},
              {"helmholtz_residual", report.helmholtz_residual},
              {"stability_ratio", report.stability_ratio}};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace torcyl::cli
