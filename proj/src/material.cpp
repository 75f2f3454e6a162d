#include "torcyl/material.hpp"

#include <cmath>
#include <string>

#include "torcyl/errors.hpp"
#include "torcyl/modal_basis.hpp"

namespace torcyl {

MaterialParams MaterialParams::create(Complex lambda, Complex mu, double rho,
                                      double omega, bool elastic_limit) {
  if (!(mu.real() > 0.0)) {
    throw ValidationError("strong convexity violated: Re mu must be > 0");
  }
  if (mu.imag() < 0.0 || (mu.imag() == 0.0 && !elastic_limit)) {
    throw ValidationError(
        "strong convexity violated: Im mu must be > 0 "
        "(set elastic_limit to allow the elastic case Im mu = 0)");
  }
  if (!(3.0 * lambda.real() + 2.0 * mu.real() > 0.0)) {
    throw ValidationError(
        "strong convexity violated: 3 Re lambda + 2 Re mu must be > 0");
  }
  const double imag_bulk = 3.0 * lambda.imag() + 2.0 * mu.imag();
  if (imag_bulk < 0.0 || (imag_bulk == 0.0 && !elastic_limit)) {
    throw ValidationError(
        "strong convexity violated: 3 Im lambda + 2 Im mu must be > 0 "
        "(set elastic_limit to allow the elastic case)");
  }
  if (!(rho > 0.0)) throw ValidationError("density must be positive");
  if (!(omega > 0.0)) throw ValidationError("angular frequency must be positive");
  return {lambda, mu, rho, omega, elastic_limit};
}

CylinderGeometry CylinderGeometry::create(double radius, double height) {
  if (!(radius > 0.0)) throw ValidationError("cylinder radius must be positive");
  if (!(height > 0.0)) throw ValidationError("cylinder height must be positive");
  return {radius, height};
}

Complex shear_wavenumber_sq(const MaterialParams& m) {
  return m.rho * m.omega * m.omega / m.mu;
}

namespace {

Complex principal_branch(Complex gamma_sq) {
  Complex g = std::sqrt(gamma_sq);
  if (g.real() < 0.0) g = -g;
  if (g.real() == 0.0 && g.imag() < 0.0) g = -g;
  return g;
}

}  // namespace

std::vector<ModalRoot> axial_wavenumbers(const MaterialParams& m,
                                         const CylinderGeometry& g,
                                         const std::vector<double>& roots) {
  const Complex ksq = shear_wavenumber_sq(m);
  std::vector<ModalRoot> modes;
  modes.reserve(roots.size() + 1);
  for (int n = 1; n <= static_cast<int>(roots.size()) + 1; ++n) {
    ModalRoot mode;
    mode.n = n;
    Complex gamma_sq;
    if (n == 1) {
      mode.k_n = 0.0;
      mode.c_n = 2.0;
      gamma_sq = -ksq;
    } else {
      mode.k_n = roots[n - 2];
      mode.c_n = make_mode(n, roots, g.radius).normalization();
      gamma_sq = Complex(mode.k_n * mode.k_n / (g.radius * g.radius), 0.0) - ksq;
    }
    if (gamma_sq == Complex(0.0, 0.0)) {
      throw ResonanceError(
          n, "modal resonance: gamma = 0 for mode n = " + std::to_string(n) +
                 " (the elastic parameters hit a torsional eigenfrequency)");
    }
    mode.gamma_n = principal_branch(gamma_sq);
    modes.push_back(mode);
  }
  return modes;
}

}  // namespace torcyl
