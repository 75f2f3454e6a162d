#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "torcyl/fields.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

std::string binary() {
  const char* env = std::getenv("TORCYL_BIN");
  REQUIRE_MESSAGE(env != nullptr, "TORCYL_BIN must point at the CLI binary");
  return env;
}

RunResult run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path make_workdir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("torcyl_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string smooth_config(int truncation = 6, const std::string& torque = "linear") {
  std::ostringstream cfg;
  cfg << "lambda_re = 2e6\nlambda_im = 0.6e6\nmu_re = 1e6\nmu_im = 0.3e6\n"
      << "rho = 1000\nomega = 62.83185307179586\n"
      << "radius = 0.01\nheight = 0.05\n"
      << "torque = " << torque << "\ntorque_amplitude = 1.0\n"
      << "truncation = " << truncation << "\n";
  return cfg.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("roots: table shape and residual column") {
  const RunResult r = run("roots --count 3");
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.output);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "n,k,residual,c");
  for (int i = 1; i <= 3; ++i) {
    const auto cells = split_csv(lines[i]);
    REQUIRE(cells.size() == 4);
    CHECK(std::stoi(cells[0]) == i + 1);
    CHECK(std::stod(cells[2]) <= 1e-12);
  }
}

TEST_CASE("roots: count 0 is a usage error") {
  const RunResult r = run("roots --count 0");
  CHECK(r.exit_code == 2);
}

TEST_CASE("roots: json output round-trips through the parser") {
  const RunResult r = run("roots --count 4 --format json");
  REQUIRE(r.exit_code == 0);
  const json parsed = json::parse(r.output);
  const std::string once = parsed.dump(2);
  const json reparsed = json::parse(once);
  CHECK(reparsed == parsed);
  CHECK(reparsed.dump(2) == once);
  REQUIRE(parsed.at("roots").size() == 4);
  CHECK(parsed.at("roots")[0].at("k").get<double>() ==
        doctest::Approx(5.1356).epsilon(1e-4));
}

TEST_CASE("solve then eval reproduces the in-process evaluation bit for bit") {
  const fs::path dir = make_workdir("solve_eval");
  write_file(dir / "config.txt", smooth_config());
  REQUIRE(run("solve --config " + (dir / "config.txt").string() + " --out " +
              dir.string())
              .exit_code == 0);

  const std::string eval_cmd = "eval --solution " +
                               (dir / "solution.json").string() +
                               " --at 0.005,0,0.025";
  const RunResult e1 = run(eval_cmd);
  const RunResult e2 = run(eval_cmd);
  REQUIRE(e1.exit_code == 0);
  CHECK(e1.output == e2.output);  // deterministic bytes

  // parse the u_theta columns back and compare with the in-process value
  const auto lines = split_lines(e1.output);
  REQUIRE(lines.size() == 2);
  const auto header = split_csv(lines[0]);
  const auto cells = split_csv(lines[1]);
  REQUIRE(header.size() == cells.size());
  double ut_re = 0.0, ut_im = 0.0;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "u_theta_re") ut_re = std::stod(cells[i]);
    if (header[i] == "u_theta_im") ut_im = std::stod(cells[i]);
  }

  using namespace torcyl;
  const MaterialParams mat = MaterialParams::create({2e6, 0.6e6}, {1e6, 0.3e6},
                                                    1000.0, 62.83185307179586);
  const CylinderGeometry geom = CylinderGeometry::create(0.01, 0.05);
  const ModalSolution sol =
      assemble(mat, geom, TorqueProfile::linear(1.0, geom.radius), 6);
  const Complex ut = displacement(sol, 0.005, 0.0, 0.025).u_cyl[1];
  CHECK(ut.real() == ut_re);  // bit-for-bit through the 17-digit round trip
  CHECK(ut.imag() == ut_im);
}

TEST_CASE("solve rejects a lossless material without the elastic flag") {
  const fs::path dir = make_workdir("elastic_gate");
  std::string cfg = smooth_config();
  cfg = cfg.replace(cfg.find("mu_im = 0.3e6"), 13, "mu_im = 0.0  ");
  cfg = cfg.replace(cfg.find("lambda_im = 0.6e6"), 17, "lambda_im = 0.0  ");
  write_file(dir / "config.txt", cfg);
  const RunResult r =
      run("solve --config " + (dir / "config.txt").string() + " --out " + dir.string());
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("strong convexity") != std::string::npos);
  // the elastic-limit flag admits the same material
  const RunResult ok = run("solve --config " + (dir / "config.txt").string() +
                           " --out " + dir.string() + " --elastic-limit");
  CHECK(ok.exit_code == 0);
}

TEST_CASE("sampled torque CSV: two columns accepted, three rejected") {
  const fs::path dir = make_workdir("sampled");
  std::ostringstream csv2;
  csv2 << "r,f\n";
  for (int i = 0; i <= 50; ++i) {
    const double r = 0.01 * i / 50;
    csv2 << r << "," << (r / 0.01) << "\n";
  }
  write_file(dir / "torque2.csv", csv2.str());
  write_file(dir / "torque3.csv", "r,f\n0,0,9\n0.005,0.5,9\n0.01,1,9\n");
  std::string cfg = smooth_config(4, "sampled");
  write_file(dir / "good.txt",
             cfg + "torque_csv = " + (dir / "torque2.csv").string() + "\n");
  write_file(dir / "bad.txt",
             cfg + "torque_csv = " + (dir / "torque3.csv").string() + "\n");
  CHECK(run("solve --config " + (dir / "good.txt").string() + " --out " +
            (dir / "g").string())
            .exit_code == 0);
  const RunResult bad = run("solve --config " + (dir / "bad.txt").string() +
                            " --out " + (dir / "b").string());
  CHECK(bad.exit_code == 3);
  CHECK(bad.output.find("columns") != std::string::npos);
}

TEST_CASE("eval: grid cardinality, axis potential, clamped top") {
  const fs::path dir = make_workdir("eval_grid");
  write_file(dir / "config.txt", smooth_config());
  REQUIRE(run("solve --config " + (dir / "config.txt").string() + " --out " +
              dir.string())
              .exit_code == 0);
  const RunResult r = run("eval --solution " + (dir / "solution.json").string() +
                          " --grid 32,32");
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.output);
  REQUIRE(lines.size() == 1 + 32 * 32);
  const auto header = split_csv(lines[0]);
  int col_r = -1, col_z = -1, col_psi_re = -1, col_psi_im = -1, col_u1re = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "r") col_r = static_cast<int>(i);
    if (header[i] == "z") col_z = static_cast<int>(i);
    if (header[i] == "psi_re") col_psi_re = static_cast<int>(i);
    if (header[i] == "psi_im") col_psi_im = static_cast<int>(i);
    if (header[i] == "u1_re") col_u1re = static_cast<int>(i);
  }
  REQUIRE(col_r >= 0);
  REQUIRE(col_z >= 0);
  int axis_rows = 0, top_rows = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv(lines[i]);
    if (std::stod(cells[col_r]) == 0.0) {
      ++axis_rows;
      CHECK(std::stod(cells[col_psi_re]) == 0.0);
      CHECK(std::stod(cells[col_psi_im]) == 0.0);
    }
    if (std::stod(cells[col_z]) == 0.05) {
      ++top_rows;
      CHECK(std::stod(cells[col_u1re]) == 0.0);
    }
  }
  CHECK(axis_rows == 32);
  CHECK(top_rows == 32);
}

TEST_CASE("eval: a point outside the cylinder is flagged, not fatal") {
  const fs::path dir = make_workdir("eval_outside");
  write_file(dir / "config.txt", smooth_config());
  REQUIRE(run("solve --config " + (dir / "config.txt").string() + " --out " +
              dir.string())
              .exit_code == 0);
  write_file(dir / "points.csv", "r,theta,z\n0.005,0,0.02\n0.02,0,0.02\n");
  const RunResult r = run("eval --solution " + (dir / "solution.json").string() +
                          " --points " + (dir / "points.csv").string());
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.output);
  REQUIRE(lines.size() == 3);
  CHECK(split_csv(lines[1])[0] == "1");
  CHECK(split_csv(lines[2])[0] == "0");
}

TEST_CASE("verify: smooth run passes, corrupted artifact names the gate") {
  const fs::path dir = make_workdir("verify");
  // mode-2 torque so the corrupted wavenumber actually carries amplitude
  write_file(dir / "config.txt",
             smooth_config(4, "mode") + "torque_mode = 2\ngrid_n = 64\n");
  REQUIRE(run("solve --config " + (dir / "config.txt").string() + " --out " +
              dir.string())
              .exit_code == 0);
  const RunResult good = run("verify --solution " +
                             (dir / "solution.json").string() + " --out " +
                             dir.string());
  CHECK(good.exit_code == 0);
  const json report = json::parse(read_file(dir / "report.json"));
  CHECK(report.at("pass").get<bool>());
  CHECK(report.at("bc_residuals").size() == 10);

  // corrupt gamma_2 by 1% and expect the PDE gate to fail
  json sol = json::parse(read_file(dir / "solution.json"));
  sol["modes"][1]["gamma_re"] = sol["modes"][1]["gamma_re"].get<double>() * 1.01;
  write_file(dir / "corrupt.json", sol.dump(2) + "\n");
  const RunResult bad = run("verify --solution " + (dir / "corrupt.json").string() +
                            " --out " + (dir / "bad").string());
  CHECK(bad.exit_code == 8);
  CHECK(bad.output.find("pde_residual") != std::string::npos);
}

TEST_CASE("verify: zero torque passes with all-zero residuals") {
  const fs::path dir = make_workdir("verify_zero");
  write_file(dir / "config.txt", smooth_config(4, "zero") + "grid_n = 64\n");
  REQUIRE(run("solve --config " + (dir / "config.txt").string() + " --out " +
              dir.string())
              .exit_code == 0);
  const RunResult r = run("verify --solution " + (dir / "solution.json").string() +
                          " --out " + dir.string());
  CHECK(r.exit_code == 0);
  const json report = json::parse(read_file(dir / "report.json"));
  CHECK(report.at("pde_residual").get<double>() == 0.0);
  CHECK(report.at("helmholtz_residual").get<double>() == 0.0);
  for (const auto& [key, value] : report.at("bc_residuals").items()) {
    CHECK(value.get<double>() == 0.0);
  }
}

TEST_CASE("verify: an under-resolved grid refuses with its own exit code") {
  const fs::path dir = make_workdir("verify_nyquist");
  write_file(dir / "config.txt", smooth_config(32) + "grid_n = 32\n");
  REQUIRE(run("solve --config " + (dir / "config.txt").string() + " --out " +
              dir.string())
              .exit_code == 0);
  const RunResult r = run("verify --solution " + (dir / "solution.json").string() +
                          " --out " + dir.string());
  CHECK(r.exit_code == 9);
}

TEST_CASE("solve output is byte-identical across runs") {
  const fs::path dir = make_workdir("determinism");
  write_file(dir / "config.txt", smooth_config());
  REQUIRE(run("solve --config " + (dir / "config.txt").string() + " --out " +
              (dir / "a").string())
              .exit_code == 0);
  REQUIRE(run("solve --config " + (dir / "config.txt").string() + " --out " +
              (dir / "b").string())
              .exit_code == 0);
  CHECK(read_file(dir / "a" / "solution.json") ==
        read_file(dir / "b" / "solution.json"));
}

TEST_CASE("numbers in data files carry 17 significant digits") {
  const fs::path dir = make_workdir("digits");
  write_file(dir / "config.txt", smooth_config());
  REQUIRE(run("solve --config " + (dir / "config.txt").string() + " --out " +
              dir.string())
              .exit_code == 0);
  const RunResult r = run("eval --solution " + (dir / "solution.json").string() +
                          " --at 0.0073,0.4,0.012");
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.output);
  REQUIRE(lines.size() == 2);
  const auto cells = split_csv(lines[1]);
  int checked = 0;
  for (size_t i = 1; i < cells.size(); ++i) {
    const double v = std::stod(cells[i]);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    CHECK(cells[i] == buf);  // canonical formatting, so parsing round-trips
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("spectrum: coefficients with decay diagnostics") {
  const fs::path dir = make_workdir("spectrum");
  write_file(dir / "config.txt", smooth_config(8, "uniform"));
  const RunResult r = run("spectrum --config " + (dir / "config.txt").string() +
                          " --format json");
  REQUIRE(r.exit_code == 0);
  const json parsed = json::parse(r.output);
  REQUIRE(parsed.at("coefficients").size() == 8);
  CHECK(parsed.at("h_half_diag").get<double>() > 0.0);
  CHECK(parsed.at("boundary_mismatch").get<double>() > 0.0);
  CHECK(parsed.at("suggested_truncation").get<int>() >= 1);
}

TEST_CASE("JSON configs are accepted and unknown keys are named") {
  const fs::path dir = make_workdir("json_config");
  const json cfg{{"lambda_re", 2e6}, {"lambda_im", 0.6e6}, {"mu_re", 1e6},
                 {"mu_im", 0.3e6},   {"rho", 1000.0},      {"omega", 62.83185307179586},
                 {"radius", 0.01},   {"height", 0.05},     {"torque", "linear"},
                 {"torque_amplitude", 1.0}, {"truncation", 5}};
  write_file(dir / "config.json", cfg.dump(2));
  CHECK(run("solve --config " + (dir / "config.json").string() + " --out " +
            dir.string())
            .exit_code == 0);
  json bad = cfg;
  bad["mu_re_typo"] = 1.0;
  write_file(dir / "bad.json", bad.dump(2));
  const RunResult r = run("solve --config " + (dir / "bad.json").string() +
                          " --out " + dir.string());
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("mu_re_typo") != std::string::npos);
}
