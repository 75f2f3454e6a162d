#include "torcyl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "torcyl/errors.hpp"
#include "torcyl/quadrature.hpp"

namespace torcyl {

namespace {

double default_fd_step(const ModalSolution& sol) {
  return 1e-3 * std::min(sol.geometry.radius, sol.geometry.height);
}

// Largest spatial frequency carried by the retained modes.
double max_mode_frequency(const ModalSolution& sol) {
  double kappa = 0.0;
  for (const ModalRoot& m : sol.modes) {
    kappa = std::max(kappa, m.k_n / sol.geometry.radius);
    kappa = std::max(kappa, std::abs(m.gamma_n));
  }
  return kappa;
}

void nyquist_check(const ModalSolution& sol, double spacing, double fd) {
  const double kappa = max_mode_frequency(sol);
  if (kappa * spacing > 0.5 * M_PI) {
    throw GridError(
        "grid spacing " + std::to_string(spacing) +
        " cannot resolve the highest retained mode (max spatial frequency " +
        std::to_string(kappa) + " 1/m); need spacing <= " +
        std::to_string(0.5 * M_PI / kappa));
  }
  if (kappa * fd > 0.5) {
    throw GridError("FD step " + std::to_string(fd) +
                    " too coarse for the highest retained mode; need step <= " +
                    std::to_string(0.5 / kappa));
  }
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int workers = std::max(1, std::min(hw, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < n; i += workers) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

std::array<Complex, 3> u_at(const ModalSolution& sol, double x, double y,
                            double z) {
  const double r = std::hypot(x, y);
  const double theta = std::atan2(y, x);
  return displacement(sol, r, theta, z).u_cart;
}

}  // namespace

double pde_residual(const ModalSolution& sol, const VerifyGrid& grid) {
  const double a = sol.geometry.radius;
  const double h = sol.geometry.height;
  const double fd = grid.fd_step > 0.0 ? grid.fd_step : default_fd_step(sol);
  const double margin = grid.margin_steps * fd;
  const int n = grid.pde_n;
  if (n < 2) throw std::invalid_argument("pde_residual: grid needs >= 2 points per axis");

  const double xmax = a - margin;
  const double zlo = margin, zhi = h - margin;
  const double spacing =
      std::max(2.0 * xmax / (n - 1), (zhi - zlo) / (n - 1));
  nyquist_check(sol, spacing, fd);

  const Complex mu = sol.material.mu;
  const Complex lpm = sol.material.lambda + mu;
  const double rw2 = sol.material.rho * sol.material.omega * sol.material.omega;

  // Numerator: max |FD L u|. Denominator: magnitude of the largest single
  // second-difference term entering the operator, plus the grad-div and
  // zeroth-order terms, so the residual is relative to what the stencil
  // actually cancels.
  std::vector<double> slab_num(n, 0.0), slab_d2(n, 0.0), slab_gd(n, 0.0),
      slab_u(n, 0.0);
  parallel_for(n, [&](int kz) {
    const double z = zlo + (zhi - zlo) * kz / (n - 1);
    double num = 0.0, max_d2 = 0.0, max_gd = 0.0, max_u = 0.0;
    for (int ix = 0; ix < n; ++ix) {
      const double x = -xmax + 2.0 * xmax * ix / (n - 1);
      for (int iy = 0; iy < n; ++iy) {
        const double y = -xmax + 2.0 * xmax * iy / (n - 1);
        if (std::hypot(x, y) > xmax) continue;
        const std::array<Complex, 3> uc = u_at(sol, x, y, z);

        // axial second differences per direction
        std::array<std::array<Complex, 3>, 3> d2{};
        const std::array<Complex, 3> uxp = u_at(sol, x + fd, y, z);
        const std::array<Complex, 3> uxm = u_at(sol, x - fd, y, z);
        const std::array<Complex, 3> uyp = u_at(sol, x, y + fd, z);
        const std::array<Complex, 3> uym = u_at(sol, x, y - fd, z);
        const std::array<Complex, 3> uzp = u_at(sol, x, y, z + fd);
        const std::array<Complex, 3> uzm = u_at(sol, x, y, z - fd);
        for (int c = 0; c < 3; ++c) {
          d2[0][c] = (uxp[c] - 2.0 * uc[c] + uxm[c]) / (fd * fd);
          d2[1][c] = (uyp[c] - 2.0 * uc[c] + uym[c]) / (fd * fd);
          d2[2][c] = (uzp[c] - 2.0 * uc[c] + uzm[c]) / (fd * fd);
        }
        // mixed second differences for grad div
        const std::array<Complex, 3> uxpyp = u_at(sol, x + fd, y + fd, z);
        const std::array<Complex, 3> uxpym = u_at(sol, x + fd, y - fd, z);
        const std::array<Complex, 3> uxmyp = u_at(sol, x - fd, y + fd, z);
        const std::array<Complex, 3> uxmym = u_at(sol, x - fd, y - fd, z);
        const std::array<Complex, 3> uxpzp = u_at(sol, x + fd, y, z + fd);
        const std::array<Complex, 3> uxpzm = u_at(sol, x + fd, y, z - fd);
        const std::array<Complex, 3> uxmzp = u_at(sol, x - fd, y, z + fd);
        const std::array<Complex, 3> uxmzm = u_at(sol, x - fd, y, z - fd);
        const std::array<Complex, 3> uypzp = u_at(sol, x, y + fd, z + fd);
        const std::array<Complex, 3> uypzm = u_at(sol, x, y + fd, z - fd);
        const std::array<Complex, 3> uymzp = u_at(sol, x, y - fd, z + fd);
        const std::array<Complex, 3> uymzm = u_at(sol, x, y - fd, z - fd);
        const double cross = 4.0 * fd * fd;
        auto mixed = [&](int c, int d) -> Complex {
          // D_c D_d u_d, c != d
          if ((c == 0 && d == 1) || (c == 1 && d == 0)) {
            return (uxpyp[d] - uxpym[d] - uxmyp[d] + uxmym[d]) / cross;
          }
          if ((c == 0 && d == 2) || (c == 2 && d == 0)) {
            return (uxpzp[d] - uxpzm[d] - uxmzp[d] + uxmzm[d]) / cross;
          }
          return (uypzp[d] - uypzm[d] - uymzp[d] + uymzm[d]) / cross;
        };
        for (int c = 0; c < 3; ++c) {
          Complex lap{}, gd{};
          for (int d = 0; d < 3; ++d) {
            lap += d2[d][c];
            max_d2 = std::max(max_d2, std::abs(d2[d][c]));
            gd += (c == d) ? d2[c][c] : mixed(c, d);
          }
          const Complex res = lpm * gd + mu * lap + rw2 * uc[c];
          num = std::max(num, std::abs(res));
          max_gd = std::max(max_gd, std::abs(gd));
          max_u = std::max(max_u, std::abs(uc[c]));
        }
      }
    }
    slab_num[kz] = num;
    slab_d2[kz] = max_d2;
    slab_gd[kz] = max_gd;
    slab_u[kz] = max_u;
  });
  const double num = *std::max_element(slab_num.begin(), slab_num.end());
  const double scale =
      std::abs(mu) * *std::max_element(slab_d2.begin(), slab_d2.end()) +
      std::abs(lpm) * *std::max_element(slab_gd.begin(), slab_gd.end()) +
      rw2 * *std::max_element(slab_u.begin(), slab_u.end());
  return scale > 0.0 ? num / scale : 0.0;
}

std::map<std::string, double> boundary_residuals(const ModalSolution& sol,
                                                 const TorqueProfile& torque,
                                                 int surface_n) {
  if (surface_n < 2) throw std::invalid_argument("boundary_residuals: need >= 2 grid points");
  const double a = sol.geometry.radius;
  const double h = sol.geometry.height;

  double f_max = 0.0;
  for (int i = 0; i < surface_n; ++i) {
    const double r = a * i / (surface_n - 1);
    f_max = std::max(f_max, std::abs(torque(r)));
  }
  const double norm = f_max > 0.0 ? f_max : 1.0;

  double wall_trr = 0.0, wall_trt = 0.0, wall_trz = 0.0;
  for (int i = 0; i < surface_n; ++i) {
    const double z = h * i / (surface_n - 1);
    const FieldSample fs = tractions(sol, a, 0.0, z);
    wall_trr = std::max(wall_trr, std::abs(fs.t_rr));
    wall_trt = std::max(wall_trt, std::abs(fs.t_rtheta));
    wall_trz = std::max(wall_trz, std::abs(fs.t_rz));
  }

  double bot_tzr = 0.0, bot_trunc = 0.0, bot_exact = 0.0, bot_tzz = 0.0;
  for (int i = 0; i < surface_n; ++i) {
    const double r = a * i / (surface_n - 1);
    const FieldSample fs = tractions(sol, r, 0.0, 0.0);
    Complex f_trunc{};
    for (int m = 0; m < sol.truncation(); ++m) {
      f_trunc += sol.spectrum.coeffs[m] * sol.shape(m).value(r);
    }
    bot_tzr = std::max(bot_tzr, std::abs(fs.t_zr()));
    bot_trunc = std::max(bot_trunc, std::abs(fs.t_ztheta - f_trunc));
    bot_exact = std::max(bot_exact, std::abs(fs.t_ztheta - torque(r)));
    bot_tzz = std::max(bot_tzz, std::abs(fs.t_zz));
  }

  double top_ur = 0.0, top_ut = 0.0, top_uz = 0.0;
  for (int i = 0; i < surface_n; ++i) {
    const double r = a * i / (surface_n - 1);
    const FieldSample fs = displacement(sol, r, 0.0, h);
    top_ur = std::max(top_ur, std::abs(fs.u_cyl[0]));
    top_ut = std::max(top_ut, std::abs(fs.u_cyl[1]));
    top_uz = std::max(top_uz, std::abs(fs.u_cyl[2]));
  }

  return {{"wall_t_rr", wall_trr / norm},
          {"wall_t_rtheta", wall_trt / norm},
          {"wall_t_rz", wall_trz / norm},
          {"bottom_t_zr", bot_tzr / norm},
          {"bottom_t_ztheta_vs_truncated", bot_trunc / norm},
          {"bottom_t_ztheta_vs_exact", bot_exact / norm},
          {"bottom_t_zz", bot_tzz / norm},
          {"top_u_r", top_ur / norm},
          {"top_u_theta", top_ut / norm},
          {"top_u_z", top_uz / norm}};
}

double helmholtz_residual(const ModalSolution& sol, const VerifyGrid& grid) {
  const double a = sol.geometry.radius;
  const double h = sol.geometry.height;
  const double fd = grid.fd_step > 0.0 ? grid.fd_step : default_fd_step(sol);
  const double margin = grid.margin_steps * fd;
  const int nr = grid.psi_nr, nz = grid.psi_nz;
  if (nr < 2 || nz < 2) throw std::invalid_argument("helmholtz_residual: grid needs >= 2 points per axis");

  const double rlo = margin, rhi = a - margin;
  const double zlo = margin, zhi = h - margin;
  const double spacing =
      std::max((rhi - rlo) / (nr - 1), (zhi - zlo) / (nz - 1));
  nyquist_check(sol, spacing, fd);

  const Complex ksq = shear_wavenumber_sq(sol.material);
  std::vector<double> slab_num(nz, 0.0), slab_scale(nz, 0.0);
  parallel_for(nz, [&](int iz) {
    const double z = zlo + (zhi - zlo) * iz / (nz - 1);
    double num = 0.0, scale = 0.0;
    for (int ir = 0; ir < nr; ++ir) {
      const double r = rlo + (rhi - rlo) * ir / (nr - 1);
      const Complex pc = potential_psi(sol, r, z);
      const Complex prp = potential_psi(sol, r + fd, z);
      const Complex prm = potential_psi(sol, r - fd, z);
      const Complex pzp = potential_psi(sol, r, z + fd);
      const Complex pzm = potential_psi(sol, r, z - fd);
      const Complex drr = (prp - 2.0 * pc + prm) / (fd * fd);
      const Complex dr = (prp - prm) / (2.0 * fd * r);
      const Complex dzz = (pzp - 2.0 * pc + pzm) / (fd * fd);
      const Complex res = drr + dr + dzz + ksq * pc;
      num = std::max(num, std::abs(res));
      scale = std::max(scale, std::abs(drr) + std::abs(dr) + std::abs(dzz) +
                                  std::abs(ksq * pc));
    }
    slab_num[iz] = num;
    slab_scale[iz] = scale;
  });
  const double num = *std::max_element(slab_num.begin(), slab_num.end());
  const double scale = *std::max_element(slab_scale.begin(), slab_scale.end());
  return scale > 0.0 ? num / scale : 0.0;
}

double h1_norm_discrete(const ModalSolution& sol, int nr, int nz) {
  const double a = sol.geometry.radius;
  const double h = sol.geometry.height;
  const GaussLegendreRule& rule_r = gauss_legendre(nr);
  const GaussLegendreRule& rule_z = gauss_legendre(nz);
  double acc = 0.0;
  for (int iz = 0; iz < nz; ++iz) {
    const double z = 0.5 * h * (rule_z.nodes[iz] + 1.0);
    const double wz = 0.5 * h * rule_z.weights[iz];
    for (int ir = 0; ir < nr; ++ir) {
      const double r = 0.5 * a * (rule_r.nodes[ir] + 1.0);
      const double wr = 0.5 * a * rule_r.weights[ir];
      const ThetaField tf = theta_field(sol, r, z);
      const double dens = std::norm(tf.S) + std::norm(tf.dS_dr) +
                          std::norm(tf.S_over_r) + std::norm(tf.dS_dz);
      acc += wz * wr * r * dens;
    }
  }
  return std::sqrt(2.0 * M_PI * acc);
}

double h_minus_half_norm(const TorqueSpectrum& spectrum) {
  double acc = 0.0;
  for (size_t i = 0; i < spectrum.coeffs.size(); ++i) {
    acc += std::norm(spectrum.coeffs[i]) / static_cast<double>(i + 1);
  }
  return std::sqrt(acc);
}

std::vector<double> stability_ratios(const MaterialParams& m,
                                     const CylinderGeometry& g,
                                     const std::vector<TorqueProfile>& family,
                                     int N, int nr, int nz) {
  std::vector<double> ratios;
  ratios.reserve(family.size());
  for (const TorqueProfile& torque : family) {
    const ModalSolution sol = assemble(m, g, torque, N);
    const double fnorm = h_minus_half_norm(sol.spectrum);
    if (fnorm == 0.0) {
      throw ValidationError(
          "stability_ratios: a family member has zero spectrum (0/0 ratio)");
    }
    ratios.push_back(h1_norm_discrete(sol, nr, nz) / fnorm);
  }
  return ratios;
}

ResidualReport run_verification(const ModalSolution& sol,
                                const TorqueProfile& torque,
                                const VerifyGrid& grid) {
  ResidualReport report;
  report.grid = grid;
  if (report.grid.fd_step <= 0.0) report.grid.fd_step = default_fd_step(sol);
  report.pde_residual = pde_residual(sol, grid);
  report.bc_residuals = boundary_residuals(sol, torque, grid.surface_n);
  report.helmholtz_residual = helmholtz_residual(sol, grid);
  const double fnorm = h_minus_half_norm(sol.spectrum);
  report.stability_ratio =
      fnorm > 0.0 ? h1_norm_discrete(sol, 64, 64) / fnorm : 0.0;
  return report;
}

}  // namespace torcyl
