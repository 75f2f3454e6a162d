#include "torcyl/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "torcyl/bessel.hpp"
#include "torcyl/errors.hpp"

namespace torcyl {

namespace {

constexpr int kQSupSamples = 129;
constexpr double kTailBoundFraction = 1e-10;

void check_axial(double z, double h) {
  if (!(z >= 0.0) || z > h * (1.0 + 1e-12)) {
    throw DomainError("axial profile: z = " + std::to_string(z) +
                      " outside [0, " + std::to_string(h) + "]");
  }
}

}  // namespace

Complex q_profile(Complex gamma, double h, double z) {
  check_axial(z, h);
  const Complex num = 1.0 - std::exp(-2.0 * gamma * (h - z));
  const Complex den = 1.0 + std::exp(-2.0 * gamma * h);
  return std::exp(-gamma * z) * num / den;
}

Complex q_profile_dz(Complex gamma, double h, double z) {
  check_axial(z, h);
  if (z == 0.0) return -gamma;  // cosh ratio is 1 at the driven face
  const Complex num = 1.0 + std::exp(-2.0 * gamma * (h - z));
  const Complex den = 1.0 + std::exp(-2.0 * gamma * h);
  return -gamma * std::exp(-gamma * z) * num / den;
}

Complex modal_field(const MaterialParams& m, const CylinderGeometry& g,
                    const ModeShape& shape, const ModalRoot& root, double r,
                    double z) {
  return q_profile(root.gamma_n, g.height, z) * shape.value(r) /
         (m.mu * root.gamma_n);
}

ModalSolution assemble(const MaterialParams& m, const CylinderGeometry& g,
                       const TorqueProfile& torque, int N) {
  if (N < 1) throw std::invalid_argument("assemble: truncation must be >= 1");
  if (!torque.valid()) throw ValidationError("assemble: torque profile is empty");

  ModalSolution sol;
  sol.material = m;
  sol.geometry = g;

  std::vector<double> roots;
  if (N > 1) roots = modal_roots(N - 1);
  sol.modes = axial_wavenumbers(m, g, roots);

  std::vector<ModeShape> shapes;
  shapes.reserve(N);
  for (int n = 1; n <= N; ++n) shapes.push_back(make_mode(n, roots, g.radius));
  sol.spectrum = project_torque([&torque](double r) { return torque(r); },
                                shapes, N);

  sol.amplitude_bounds.resize(N);
  for (int i = 0; i < N; ++i) {
    double q_sup = 0.0;
    for (int s = 0; s < kQSupSamples; ++s) {
      const double z = g.height * s / (kQSupSamples - 1);
      q_sup = std::max(q_sup, std::abs(q_profile(sol.modes[i].gamma_n, g.height, z)));
    }
    sol.amplitude_bounds[i] = std::abs(sol.spectrum.coeffs[i]) * q_sup /
                              std::abs(m.mu * sol.modes[i].gamma_n);
  }
  double retained = 0.0;
  double tail = 0.0;
  for (double b : sol.amplitude_bounds) tail += b;
  sol.suggested_truncation = N;
  for (int i = 0; i < N; ++i) {
    retained += sol.amplitude_bounds[i];
    tail -= sol.amplitude_bounds[i];
    if (tail <= kTailBoundFraction * retained) {
      sol.suggested_truncation = i + 1;
      break;
    }
  }
  return sol;
}

}  // namespace torcyl
