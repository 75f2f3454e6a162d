#ifndef TORCYL_TOOLS_RUN_CONFIG_HPP
#define TORCYL_TOOLS_RUN_CONFIG_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "torcyl/solver.hpp"
#include "torcyl/verify.hpp"

namespace torcyl::cli {

// Flat run configuration. Accepted either as key=value lines or as a JSON
// object with the same keys (see docs/config.schema.json).
struct RunConfig {
  double lambda_re = 0.0, lambda_im = 0.0;
  double mu_re = 0.0, mu_im = 0.0;
  double rho = 0.0, omega = 0.0;
  double radius = 0.0, height = 0.0;
  bool elastic_limit = false;

  std::string torque = "linear";  // linear|uniform|parabolic|mode|sampled|zero
  double torque_amplitude = 1.0;
  int torque_mode = 2;
  std::string torque_csv;
  std::vector<double> torque_r, torque_f;  // inline samples (artifact round-trip)

  int truncation = 32;

  int grid_n = 64;
  double fd_step_rel = 1e-3;
  int margin_steps = 5;
  int surface_n = 257;
  int psi_nr = 48, psi_nz = 48;

  // Verification gates; a nonpositive value reports without gating.
  double gate_pde = 1e-5;
  double gate_boundary = 1e-9;
  double gate_top = 1e-14;
  double gate_helmholtz = 0.0;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_json(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);
nlohmann::json config_to_json(const RunConfig& cfg);

// Reads a sampled-torque CSV (header "r,f", exactly two columns, strictly
// increasing r) into cfg.torque_r / cfg.torque_f.
void load_torque_csv(RunConfig& cfg, const std::string& path);

MaterialParams material_from(const RunConfig& cfg);
CylinderGeometry geometry_from(const RunConfig& cfg);
TorqueProfile torque_from(const RunConfig& cfg);
VerifyGrid grid_from(const RunConfig& cfg);

// Solution artifact: self-describing JSON (schema_version 1) with the full
// config, modes and spectrum, so later evaluation needs no recomputation.
nlohmann::json solution_to_json(const RunConfig& cfg, const ModalSolution& sol);
ModalSolution solution_from_json(const nlohmann::json& j, RunConfig* cfg_out);

nlohmann::json report_to_json(const ResidualReport& report);

// 17 significant digits; round-trips to the same double.
std::string fmt(double v);

}  // namespace torcyl::cli

#endif  // TORCYL_TOOLS_RUN_CONFIG_HPP
