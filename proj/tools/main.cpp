#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "run_config.hpp"
#include "torcyl/bessel.hpp"
#include "torcyl/errors.hpp"
#include "torcyl/fields.hpp"

namespace {

using nlohmann::json;
using namespace torcyl;
using namespace torcyl::cli;

// Exit codes, also listed in the README:
// 0 ok, 2 usage, 3 config/validation, 4 resonance, 5 root search,
// 6 quadrature, 7 I/O or internal, 8 verification gate failed,
// 9 grid refusal, 10 evaluation domain error.
enum ExitCode {
  kOk = 0,
  kUsage = 2,
  kValidation = 3,
  kResonance = 4,
  kRootSearch = 5,
  kQuadrature = 6,
  kIoError = 7,
  kGateFailed = 8,
  kGridRefused = 9,
  kDomain = 10,
};

void write_output(const std::string& out_dir, const std::string& filename,
                  const std::string& payload) {
  if (out_dir.empty()) {
    std::cout << payload;
    return;
  }
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path path = std::filesystem::path(out_dir) / filename;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << payload;
  std::cout << path.string() << "\n";
}

std::string json_dump(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": invalid JSON: " + e.what());
  }
}

double parse_number(const std::string& cell, const std::string& context) {
  try {
    size_t pos = 0;
    const double v = std::stod(cell, &pos);
    if (pos != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::logic_error&) {
    throw ValidationError(context + ": expected a number, got '" + cell + "'");
  }
}

int cmd_roots(int count, const std::string& config_path,
              const std::string& format, const std::string& out_dir,
              bool elastic_limit) {
  const std::vector<double> roots = modal_roots(count);
  std::optional<RunConfig> cfg;
  std::vector<ModalRoot> modes;
  if (!config_path.empty()) {
    cfg = load_config_file(config_path);
    if (elastic_limit) cfg->elastic_limit = true;
    modes = axial_wavenumbers(material_from(*cfg), geometry_from(*cfg), roots);
  }
  std::vector<double> residual(count), cnorm(count);
  for (int i = 0; i < count; ++i) {
    const BesselEval b = bessel_j(roots[i]);
    residual[i] = std::abs(roots[i] * b.j1p - b.j1);
    cnorm[i] = std::sqrt(2.0) / std::abs(b.j1);
  }
  if (format == "json") {
    json rows = json::array();
    for (int i = 0; i < count; ++i) {
      json row{{"n", i + 2},
               {"k", roots[i]},
               {"residual", residual[i]},
               {"c", cnorm[i]}};
      if (!modes.empty()) {
        row["gamma_re"] = modes[i + 1].gamma_n.real();
        row["gamma_im"] = modes[i + 1].gamma_n.imag();
      }
      rows.push_back(row);
    }
    write_output(out_dir, "roots.json",
                 json_dump(json{{"count", count}, {"roots", rows}}));
  } else {
    std::ostringstream csv;
    csv << (modes.empty() ? "n,k,residual,c"
                          : "n,k,residual,c,gamma_re,gamma_im")
        << "\n";
    for (int i = 0; i < count; ++i) {
      csv << (i + 2) << "," << fmt(roots[i]) << "," << fmt(residual[i]) << ","
          << fmt(cnorm[i]);
      if (!modes.empty()) {
        csv << "," << fmt(modes[i + 1].gamma_n.real()) << ","
            << fmt(modes[i + 1].gamma_n.imag());
      }
      csv << "\n";
    }
    write_output(out_dir, "roots.csv", csv.str());
  }
  return kOk;
}

int cmd_spectrum(const std::string& config_path, const std::string& format,
                 const std::string& out_dir, bool elastic_limit) {
  RunConfig cfg = load_config_file(config_path);
  if (elastic_limit) cfg.elastic_limit = true;
  const ModalSolution sol =
      assemble(material_from(cfg), geometry_from(cfg), torque_from(cfg),
               cfg.truncation);
  if (format == "json") {
    json rows = json::array();
    for (int i = 0; i < sol.truncation(); ++i) {
      rows.push_back({{"n", i + 1},
                      {"k", sol.modes[i].k_n},
                      {"f_re", sol.spectrum.coeffs[i].real()},
                      {"f_im", sol.spectrum.coeffs[i].imag()},
                      {"f_abs", std::abs(sol.spectrum.coeffs[i])}});
    }
    write_output(out_dir, "spectrum.json",
                 json_dump(json{{"coefficients", rows},
                                {"h_half_diag", sol.spectrum.h_half_diag},
                                {"decay_exponent", sol.spectrum.decay_exponent},
                                {"boundary_mismatch", sol.spectrum.boundary_mismatch},
                                {"suggested_truncation", sol.suggested_truncation}}));
  } else {
    std::ostringstream csv;
    csv << "n,k,f_re,f_im,f_abs\n";
    for (int i = 0; i < sol.truncation(); ++i) {
      csv << (i + 1) << "," << fmt(sol.modes[i].k_n) << ","
          << fmt(sol.spectrum.coeffs[i].real()) << ","
          << fmt(sol.spectrum.coeffs[i].imag()) << ","
          << fmt(std::abs(sol.spectrum.coeffs[i])) << "\n";
    }
    write_output(out_dir, "spectrum.csv", csv.str());
  }
  return kOk;
}

int cmd_solve(const std::string& config_path, const std::string& out_dir,
              bool elastic_limit) {
  RunConfig cfg = load_config_file(config_path);
  if (elastic_limit) cfg.elastic_limit = true;
  const ModalSolution sol =
      assemble(material_from(cfg), geometry_from(cfg), torque_from(cfg),
               cfg.truncation);
  write_output(out_dir.empty() ? "." : out_dir, "solution.json",
               json_dump(solution_to_json(cfg, sol)));
  return kOk;
}

void append_sample_csv(std::ostringstream& csv, const ModalSolution& sol,
                       double r, double theta, double z) {
  bool inside = true;
  FieldSample fs;
  try {
    fs = sample(sol, r, theta, z);
  } catch (const DomainError&) {
    inside = false;
    fs.r = r;
    fs.theta = theta;
    fs.z = z;
  }
  csv << (inside ? 1 : 0) << "," << fmt(r) << "," << fmt(theta) << ","
      << fmt(z);
  const Complex vals[] = {fs.u_cart[0],  fs.u_cart[1], fs.u_cart[2],
                          fs.u_cyl[0],   fs.u_cyl[1],  fs.u_cyl[2],
                          fs.t_rr,       fs.t_rtheta,  fs.t_rz,
                          fs.t_zr(),     fs.t_ztheta,  fs.t_zz,
                          fs.psi};
  for (const Complex& v : vals) {
    csv << "," << fmt(v.real()) << "," << fmt(v.imag());
  }
  csv << "\n";
}

json sample_to_json(const ModalSolution& sol, double r, double theta, double z) {
  json row{{"r", r}, {"theta", theta}, {"z", z}};
  try {
    const FieldSample fs = sample(sol, r, theta, z);
    row["in_domain"] = true;
    row["u_cart"] = {fs.u_cart[0].real(), fs.u_cart[0].imag(),
                     fs.u_cart[1].real(), fs.u_cart[1].imag(),
                     fs.u_cart[2].real(), fs.u_cart[2].imag()};
    row["u_cyl"] = {fs.u_cyl[0].real(), fs.u_cyl[0].imag(),
                    fs.u_cyl[1].real(), fs.u_cyl[1].imag(),
                    fs.u_cyl[2].real(), fs.u_cyl[2].imag()};
    row["t_rr"] = {fs.t_rr.real(), fs.t_rr.imag()};
    row["t_rtheta"] = {fs.t_rtheta.real(), fs.t_rtheta.imag()};
    row["t_rz"] = {fs.t_rz.real(), fs.t_rz.imag()};
    row["t_zr"] = {fs.t_zr().real(), fs.t_zr().imag()};
    row["t_ztheta"] = {fs.t_ztheta.real(), fs.t_ztheta.imag()};
    row["t_zz"] = {fs.t_zz.real(), fs.t_zz.imag()};
    row["psi"] = {fs.psi.real(), fs.psi.imag()};
  } catch (const DomainError&) {
    row["in_domain"] = false;
  }
  return row;
}

constexpr const char* kEvalHeader =
    "in_domain,r,theta,z,u1_re,u1_im,u2_re,u2_im,u3_re,u3_im,"
    "u_r_re,u_r_im,u_theta_re,u_theta_im,u_z_re,u_z_im,"
    "t_rr_re,t_rr_im,t_rtheta_re,t_rtheta_im,t_rz_re,t_rz_im,"
    "t_zr_re,t_zr_im,t_ztheta_re,t_ztheta_im,t_zz_re,t_zz_im,psi_re,psi_im";

int cmd_eval(const std::string& solution_path, const std::string& points_path,
             const std::string& at, const std::string& grid, double theta,
             double line_r_z, double line_z_r, int samples,
             const std::string& format, const std::string& out_dir) {
  RunConfig cfg;
  const ModalSolution sol =
      solution_from_json(load_json_file(solution_path), &cfg);

  std::vector<std::array<double, 3>> pts;
  if (line_r_z >= 0.0) {
    // radial line at fixed z, plot-ready
    for (int i = 0; i < samples; ++i) {
      pts.push_back({sol.geometry.radius * i / (samples - 1), theta, line_r_z});
    }
  } else if (line_z_r >= 0.0) {
    for (int i = 0; i < samples; ++i) {
      pts.push_back({line_z_r, theta, sol.geometry.height * i / (samples - 1)});
    }
  } else if (!at.empty()) {
    std::stringstream ss(at);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != 3) throw ValidationError("--at expects 'r,theta,z'");
    pts.push_back({v[0], v[1], v[2]});
  } else if (!points_path.empty()) {
    std::ifstream in(points_path);
    if (!in) throw Error("cannot open points file: " + points_path);
    std::string line;
    if (!std::getline(in, line) ||
        line.find("r,theta,z") == std::string::npos) {
      throw ValidationError("points CSV: header must be 'r,theta,z'");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream row(line);
      std::string cell;
      std::vector<double> v;
      while (std::getline(row, cell, ',')) v.push_back(std::stod(cell));
      if (v.size() != 3) {
        throw ValidationError("points CSV: each row needs r,theta,z");
      }
      pts.push_back({v[0], v[1], v[2]});
    }
  } else {
    int nr = 33, nz = 33;
    if (!grid.empty()) {
      if (std::sscanf(grid.c_str(), "%d,%d", &nr, &nz) != 2 || nr < 1 || nz < 1) {
        throw ValidationError("--grid expects 'NR,NZ' with positive counts");
      }
    }
    for (int ir = 0; ir < nr; ++ir) {
      const double r = nr == 1 ? 0.0 : sol.geometry.radius * ir / (nr - 1);
      for (int iz = 0; iz < nz; ++iz) {
        const double z = nz == 1 ? 0.0 : sol.geometry.height * iz / (nz - 1);
        pts.push_back({r, theta, z});
      }
    }
  }

  if (format == "json") {
    json rows = json::array();
    for (const auto& p : pts) rows.push_back(sample_to_json(sol, p[0], p[1], p[2]));
    write_output(out_dir, "eval.json", json_dump(json{{"samples", rows}}));
  } else {
    std::ostringstream csv;
    csv << kEvalHeader << "\n";
    for (const auto& p : pts) append_sample_csv(csv, sol, p[0], p[1], p[2]);
    write_output(out_dir, "eval.csv", csv.str());
  }
  return kOk;
}

int cmd_verify(const std::string& solution_path, int grid_n,
               double fd_step_rel, const std::string& out_dir) {
  RunConfig cfg;
  const ModalSolution sol =
      solution_from_json(load_json_file(solution_path), &cfg);
  const TorqueProfile torque = torque_from(cfg);
  VerifyGrid grid = grid_from(cfg);
  if (grid_n > 0) grid.pde_n = grid_n;
  if (fd_step_rel > 0.0) {
    grid.fd_step = fd_step_rel * std::min(cfg.radius, cfg.height);
  }

  const ResidualReport report = run_verification(sol, torque, grid);

  struct Gate {
    std::string name;
    double value;
    double threshold;
  };
  std::vector<Gate> gates;
  if (cfg.gate_pde > 0.0) {
    gates.push_back({"pde_residual", report.pde_residual, cfg.gate_pde});
  }
  if (cfg.gate_boundary > 0.0) {
    for (const char* key :
         {"wall_t_rr", "wall_t_rtheta", "wall_t_rz", "bottom_t_zr",
          "bottom_t_ztheta_vs_truncated", "bottom_t_zz"}) {
      gates.push_back({key, report.bc_residuals.at(key), cfg.gate_boundary});
    }
  }
  if (cfg.gate_top > 0.0) {
    for (const char* key : {"top_u_r", "top_u_theta", "top_u_z"}) {
      gates.push_back({key, report.bc_residuals.at(key), cfg.gate_top});
    }
  }
  if (cfg.gate_helmholtz > 0.0) {
    gates.push_back(
        {"helmholtz_residual", report.helmholtz_residual, cfg.gate_helmholtz});
  }

  json jgates = json::array();
  bool all_pass = true;
  std::vector<std::string> failed;
  for (const Gate& g : gates) {
    const bool pass = g.value <= g.threshold;
    all_pass = all_pass && pass;
    if (!pass) failed.push_back(g.name);
    jgates.push_back({{"name", g.name},
                      {"value", g.value},
                      {"threshold", g.threshold},
                      {"pass", pass}});
  }
  json jreport = report_to_json(report);
  jreport["gates"] = jgates;
  jreport["pass"] = all_pass;
  write_output(out_dir, "report.json", json_dump(jreport));
  if (!all_pass) {
    std::cerr << "verification gate failed:";
    for (const std::string& name : failed) std::cerr << " " << name;
    std::cerr << "\n";
    return kGateFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spectral solver for torsional deformation of a clamped viscoelastic "
      "cylinder driven by a bottom-face torque, with a residual-based "
      "verification harness"};
  app.require_subcommand(1);

  // roots
  auto* roots_cmd = app.add_subcommand(
      "roots", "Torsional eigenvalues k_n solving k J1'(k) = J1(k)");
  int count = 8;
  std::string roots_config, roots_format = "csv", roots_out;
  bool roots_elastic = false;
  roots_cmd->add_option("--count", count, "number of roots")
      ->check(CLI::PositiveNumber);
  roots_cmd->add_option("--config", roots_config,
                        "config file (adds the gamma_n columns)");
  roots_cmd->add_option("--format", roots_format)
      ->check(CLI::IsMember({"csv", "json"}));
  roots_cmd->add_option("--out", roots_out, "output directory");
  roots_cmd->add_flag("--elastic-limit", roots_elastic);

  // spectrum
  auto* spec_cmd =
      app.add_subcommand("spectrum", "Dini coefficients of the torque");
  std::string spec_config, spec_format = "csv", spec_out;
  bool spec_elastic = false;
  spec_cmd->add_option("--config", spec_config)->required();
  spec_cmd->add_option("--format", spec_format)
      ->check(CLI::IsMember({"csv", "json"}));
  spec_cmd->add_option("--out", spec_out, "output directory");
  spec_cmd->add_flag("--elastic-limit", spec_elastic);

  // solve
  auto* solve_cmd = app.add_subcommand(
      "solve", "Assemble the modal solution and write the solution artifact");
  std::string solve_config, solve_out;
  bool solve_elastic = false;
  solve_cmd->add_option("--config", solve_config)->required();
  solve_cmd->add_option("--out", solve_out, "output directory (default .)");
  solve_cmd->add_flag("--elastic-limit", solve_elastic);

  // eval
  auto* eval_cmd = app.add_subcommand(
      "eval", "Evaluate displacement, tractions and potential of a solution");
  std::string eval_solution, eval_points, eval_at, eval_grid,
      eval_format = "csv", eval_out;
  double eval_theta = 0.0, eval_line_r = -1.0, eval_line_z = -1.0;
  int eval_samples = 201;
  eval_cmd->add_option("--solution", eval_solution)->required();
  eval_cmd->add_option("--points", eval_points, "CSV with header r,theta,z");
  eval_cmd->add_option("--at", eval_at, "single point 'r,theta,z'");
  eval_cmd->add_option("--grid", eval_grid, "tensor grid 'NR,NZ'");
  eval_cmd->add_option("--theta", eval_theta, "grid azimuth (default 0)");
  eval_cmd->add_option("--line-r", eval_line_r,
                       "radial profile at this z (plot data)");
  eval_cmd->add_option("--line-z", eval_line_z,
                       "axial profile at this r (plot data)");
  eval_cmd->add_option("--samples", eval_samples, "points per line profile")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--format", eval_format)
      ->check(CLI::IsMember({"csv", "json"}));
  eval_cmd->add_option("--out", eval_out, "output directory");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "Residual certification of a solution artifact");
  std::string verify_solution, verify_out;
  int verify_grid_n = 0;
  double verify_fd_rel = 0.0;
  verify_cmd->add_option("--solution", verify_solution)->required();
  verify_cmd->add_option("--grid-n", verify_grid_n,
                         "points per axis for the PDE residual grid");
  verify_cmd->add_option("--fd-step-rel", verify_fd_rel,
                         "FD step relative to min(radius, height)");
  verify_cmd->add_option("--out", verify_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (roots_cmd->parsed()) {
      return cmd_roots(count, roots_config, roots_format, roots_out,
                       roots_elastic);
    }
    if (spec_cmd->parsed()) {
      return cmd_spectrum(spec_config, spec_format, spec_out, spec_elastic);
    }
    if (solve_cmd->parsed()) {
      return cmd_solve(solve_config, solve_out, solve_elastic);
    }
    if (eval_cmd->parsed()) {
      return cmd_eval(eval_solution, eval_points, eval_at, eval_grid,
                      eval_theta, eval_line_r, eval_line_z, eval_samples,
                      eval_format, eval_out);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(verify_solution, verify_grid_n, verify_fd_rel,
                        verify_out);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error (validation): " << e.what() << "\n";
    return kValidation;
  } catch (const ResonanceError& e) {
    std::cerr << "error (resonance): " << e.what() << "\n";
    return kResonance;
  } catch (const RootSearchError& e) {
    std::cerr << "error (root search): " << e.what() << "\n";
    return kRootSearch;
  } catch (const QuadratureError& e) {
    std::cerr << "error (quadrature): " << e.what() << "\n";
    return kQuadrature;
  } catch (const GridError& e) {
    std::cerr << "error (grid): " << e.what() << "\n";
    return kGridRefused;
  } catch (const DomainError& e) {
    std::cerr << "error (domain): " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kUsage;
}
