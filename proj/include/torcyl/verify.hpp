#ifndef TORCYL_VERIFY_HPP
#define TORCYL_VERIFY_HPP

#include <map>
#include <string>
#include <vector>

#include "torcyl/fields.hpp"
#include "torcyl/solver.hpp"

namespace torcyl {

// Grid controls for the residual checks. fd_step = 0 selects the default
// 1e-3 * min(a, h); margins are counted in fd steps.
struct VerifyGrid {
  int pde_n = 32;        // Cartesian sampling points per axis
  double fd_step = 0.0;  // absolute stencil step
  int margin_steps = 5;
  int surface_n = 257;   // boundary grids
  int psi_nr = 48;       // (r, z) grid for the potential check
  int psi_nz = 48;
};

// Max FD residual of (lambda+mu) grad div u + mu lap u + rho omega^2 u over
// an interior Cartesian grid, normalized by the largest term magnitude of
// the discrete operator. Consumes only point samples of u (2nd-order
// central stencils); refuses with GridError when the grid or step cannot
// resolve the highest retained mode.
double pde_residual(const ModalSolution& sol, const VerifyGrid& grid);

// Max residual of every boundary condition, normalized by max |f|:
// wall r=a:  t_rr, t_rtheta, t_rz
// bottom:    t_zr, t_ztheta vs the truncated torque, t_ztheta vs the exact
//            torque (Dini truncation error, reported not gated), t_zz
// top:       u_r, u_theta, u_z (clamp)
std::map<std::string, double> boundary_residuals(const ModalSolution& sol,
                                                 const TorqueProfile& torque,
                                                 int surface_n);

// Max FD residual of (d_rr + r^-1 d_r + d_zz + rho omega^2 / mu) psi on an
// interior (r, z) grid, normalized by the largest term magnitude. Consumes
// only point samples of psi.
double helmholtz_residual(const ModalSolution& sol, const VerifyGrid& grid);

// Discrete H1 norm: quadrature of |u|^2 + |d_r u|^2 + |u/r|^2 + |d_z u|^2
// over a Gauss-Legendre tensor grid with measure r dr dtheta dz
// (derivatives analytic).
double h1_norm_discrete(const ModalSolution& sol, int nr, int nz);

// Surrogate (sum_n |f_n|^2 / n)^(1/2).
double h_minus_half_norm(const TorqueSpectrum& spectrum);

// H1 / H^{-1/2} ratios across a family of torques at fixed material and
// geometry. Throws ValidationError on a zero-spectrum member (0/0).
std::vector<double> stability_ratios(const MaterialParams& m,
                                     const CylinderGeometry& g,
                                     const std::vector<TorqueProfile>& family,
                                     int N, int nr, int nz);

struct ResidualReport {
  double pde_residual = 0.0;
  std::map<std::string, double> bc_residuals;
  double helmholtz_residual = 0.0;
  double stability_ratio = 0.0;
  VerifyGrid grid;
};

// Runs all checks on one solution. stability_ratio is the solution's own
// H1 / H^{-1/2} ratio, 0 for a zero torque.
ResidualReport run_verification(const ModalSolution& sol,
                                const TorqueProfile& torque,
                                const VerifyGrid& grid);

}  // namespace torcyl

#endif  // TORCYL_VERIFY_HPP
