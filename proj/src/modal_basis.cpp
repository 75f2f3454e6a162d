#include "torcyl/modal_basis.hpp"

#include <cmath>
#include <stdexcept>

#include "torcyl/bessel.hpp"
#include "torcyl/errors.hpp"
#include "torcyl/quadrature.hpp"

namespace torcyl {

namespace {

constexpr double kProjectionRelTol = 1e-10;

void check_radius(double r, double a) {
  if (!(r >= 0.0) || r > a * (1.0 + 1e-12)) {
    throw DomainError("mode evaluation: r = " + std::to_string(r) +
                      " outside [0, " + std::to_string(a) + "]");
  }
}

}  // namespace

RadialEval ModeShape::eval(double r) const {
  check_radius(r, a_);
  if (n_ == 1) {
    // phi_1^a(r) = c_1 r / a^2 with c_1 = 2
    return {c_ * r / (a_ * a_), c_ / (a_ * a_), c_ * r * r / (2.0 * a_ * a_)};
  }
  const double x = k_ * r / a_;
  const BesselEval b = bessel_j(x);
  const double scale = c_ / a_;
  return {scale * b.j1, scale * (k_ / a_) * b.j1p,
          c_ * (1.0 - b.j0) / k_};
}

double ModeShape::value_over_r(double r) const {
  check_radius(r, a_);
  if (r == 0.0) {
    // limit phi_n^a(r)/r -> phi_n^a'(0); J1'(0) = 1/2
    if (n_ == 1) return c_ / (a_ * a_);
    return c_ * k_ / (2.0 * a_ * a_);
  }
  if (n_ == 1) return c_ / (a_ * a_);
  const double x = k_ * r / a_;
  return (c_ / a_) * bessel_j(x).j1 / r;
}

ModeShape make_mode(int n, const std::vector<double>& roots, double a) {
  if (n < 1) throw std::invalid_argument("make_mode: mode index must be >= 1");
  if (!(a > 0.0)) throw ValidationError("make_mode: radius must be positive");
  if (n == 1) {
    // int_0^1 (c r)^2 r dr = c^2/4 = 1
    return ModeShape(1, 0.0, 2.0, a);
  }
  const int idx = n - 2;
  if (idx >= static_cast<int>(roots.size())) {
    throw std::out_of_range("make_mode: mode " + std::to_string(n) +
                            " exceeds the " + std::to_string(roots.size()) +
                            " available roots");
  }
  const double k = roots[idx];
  // int_0^1 J1(k r)^2 r dr = J1(k)^2 / 2 at the eigencondition k J1'(k) = J1(k)
  const double c = std::sqrt(2.0) / std::abs(bessel_j(k).j1);
  return ModeShape(n, k, c, a);
}

std::vector<ModeShape> make_modes(int count, double a) {
  if (count < 1) throw std::invalid_argument("make_modes: count must be >= 1");
  std::vector<ModeShape> modes;
  modes.reserve(count);
  std::vector<double> roots;
  if (count > 1) roots = modal_roots(count - 1);
  for (int n = 1; n <= count; ++n) {
    modes.push_back(make_mode(n, roots, a));
  }
  return modes;
}

TorqueSpectrum project_torque(const std::function<double(double)>& f,
                              const std::vector<ModeShape>& modes, int N) {
  if (N < 1) throw std::invalid_argument("project_torque: N must be >= 1");
  if (N > static_cast<int>(modes.size())) {
    throw std::out_of_range("project_torque: N = " + std::to_string(N) +
                            " exceeds the " + std::to_string(modes.size()) +
                            " provided modes");
  }
  const double a = modes.front().radius();
  TorqueSpectrum spec;
  spec.coeffs.resize(N);
  double series_at_a = 0.0;
  for (int i = 0; i < N; ++i) {
    const ModeShape& m = modes[i];
    // one panel per oscillation lobe of J1(k_n r / a)
    const int panels =
        m.index() == 1 ? 1 : static_cast<int>(m.eigenvalue() / M_PI) + 1;
    const double fn = adaptive_integrate(
        [&](double r) { return f(r) * m.value(r) * r; }, 0.0, a,
        kProjectionRelTol, panels);
    spec.coeffs[i] = fn;
    spec.h_half_diag += fn * fn / m.index();
    series_at_a += fn * m.value(a);
  }
  spec.boundary_mismatch = std::abs(f(a) - series_at_a);

  // decay exponent p of |f_n|^2 ~ n^(-p), fitted over the Bessel modes
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int used = 0;
  for (int i = 1; i < N; ++i) {
    const double mag = std::abs(spec.coeffs[i]);
    if (mag <= 0.0) continue;
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(mag * mag);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used >= 2) {
    const double denom = used * sxx - sx * sx;
    if (denom != 0.0) spec.decay_exponent = -(used * sxy - sx * sy) / denom;
  }
  return spec;
}

}  // namespace torcyl
