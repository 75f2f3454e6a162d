#ifndef TORCYL_SOLVER_HPP
#define TORCYL_SOLVER_HPP

#include <complex>
#include <vector>

#include "torcyl/material.hpp"
#include "torcyl/modal_basis.hpp"
#include "torcyl/torque.hpp"

namespace torcyl {

// Axial profile q(z) = sinh(gamma (h - z)) / cosh(gamma h), evaluated in the
// negative-exponent form e^{-gamma z} (1 - e^{-2 gamma (h-z)}) / (1 + e^{-2 gamma h})
// which is overflow-safe for Re gamma >= 0 (finite up to Re gamma * h ~ 1e4
// and beyond). q(h) = 0 and dq/dz(0) = -gamma hold exactly.
Complex q_profile(Complex gamma, double h, double z);

// dq/dz = -gamma cosh(gamma (h - z)) / cosh(gamma h), same stable style.
Complex q_profile_dz(Complex gamma, double h, double z);

// Modal field v_n(r, z) = q_n(z) phi_n^a(r) / (mu gamma_n).
Complex modal_field(const MaterialParams& m, const CylinderGeometry& g,
                    const ModeShape& shape, const ModalRoot& root, double r,
                    double z);

// Assembled truncated solution: displacement is
//   u(r, theta, z) = sum_n f_n v_n(r, z) (sin theta, -cos theta, 0).
struct ModalSolution {
  MaterialParams material;
  CylinderGeometry geometry;
  std::vector<ModalRoot> modes;  // modes[i] has index n = i + 1
  TorqueSpectrum spectrum;
  // |f_n| sup_z |q_n| / |mu gamma_n| per mode, and the smallest truncation
  // whose dropped-mode bound sum stays below 1e-10 of the retained sum.
  std::vector<double> amplitude_bounds;
  int suggested_truncation = 0;

  int truncation() const { return static_cast<int>(modes.size()); }
  ModeShape shape(int i) const {
    return ModeShape(modes[i].n, modes[i].k_n, modes[i].c_n, geometry.radius);
  }
};

// Computes roots, modes, wavenumbers and the torque spectrum for the first
// N modes. Propagates resonance, root-search and quadrature errors.
ModalSolution assemble(const MaterialParams& m, const CylinderGeometry& g,
                       const TorqueProfile& torque, int N);

}  // namespace torcyl

#endif  // TORCYL_SOLVER_HPP
