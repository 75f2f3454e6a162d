#ifndef TORCYL_QUADRATURE_HPP
#define TORCYL_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace torcyl {

struct GaussLegendreRule {
  std::vector<double> nodes;    // in (-1, 1)
  std::vector<double> weights;  // sum to 2
};

// Nodes and weights of the n-point Gauss-Legendre rule (Newton iteration
// on the Legendre polynomial; accurate to ~1e-15).
const GaussLegendreRule& gauss_legendre(int n);

// Integrates fn over [lo, hi] by adaptive panel-splitting Gauss-Legendre.
// `initial_panels` should resolve the coarse oscillation of the integrand;
// each panel is then bisected until the local 1-vs-2 panel difference drops
// below rel_tol times the L1 size of the integral. Throws QuadratureError
// when the subdivision depth exceeds 48.
double adaptive_integrate(const std::function<double(double)>& fn, double lo,
                          double hi, double rel_tol, int initial_panels = 1);

}  // namespace torcyl

#endif  // TORCYL_QUADRATURE_HPP
