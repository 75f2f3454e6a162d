#ifndef TORCYL_MATERIAL_HPP
#define TORCYL_MATERIAL_HPP

#include <complex>
#include <vector>

namespace torcyl {

using Complex = std::complex<double>;

// Complex Lame moduli with density and angular frequency. Construction
// enforces the strong convexity condition
//   Re mu > 0, Im mu > 0, 3 Re lambda + 2 Re mu > 0, 3 Im lambda + 2 Im mu > 0;
// the elastic limit Im mu = Im lambda = 0 is accepted only behind the flag.
struct MaterialParams {
  Complex lambda{0.0, 0.0};  // Pa
  Complex mu{0.0, 0.0};      // Pa
  double rho = 0.0;          // kg/m^3
  double omega = 0.0;        // rad/s
  bool elastic_limit = false;

  static MaterialParams create(Complex lambda, Complex mu, double rho,
                               double omega, bool elastic_limit = false);
};

struct CylinderGeometry {
  double radius = 0.0;  // a, m
  double height = 0.0;  // h, m

  static CylinderGeometry create(double radius, double height);
};

// One torsional mode: eigenvalue k_n (dimensionless, 0 for n = 1),
// normalization c_n, and the complex axial wavenumber gamma_n with the
// branch fixed to Re gamma_n >= 0 (ties broken by Im gamma_n > 0).
struct ModalRoot {
  int n = 0;
  double k_n = 0.0;
  double c_n = 0.0;
  Complex gamma_n{0.0, 0.0};
};

// k^2 = rho omega^2 / mu
Complex shear_wavenumber_sq(const MaterialParams& m);

// gamma_n^2 = -k^2 (n = 1) or k_n^2/a^2 - k^2 (n >= 2), principal square
// root with Re gamma_n >= 0. Throws ResonanceError if some gamma_n is
// exactly zero, which only purely elastic moduli can produce.
std::vector<ModalRoot> axial_wavenumbers(const MaterialParams& m,
                                         const CylinderGeometry& g,
                                         const std::vector<double>& roots);

}  // namespace torcyl

#endif  // TORCYL_MATERIAL_HPP
