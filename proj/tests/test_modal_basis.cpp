#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "torcyl/bessel.hpp"
#include "torcyl/errors.hpp"
#include "torcyl/modal_basis.hpp"
#include "torcyl/torque.hpp"

using namespace torcyl;

namespace {
constexpr double kRadius = 0.01;
}

TEST_CASE("linear mode normalization c_1 = 2") {
  const std::vector<double> roots;
  const ModeShape m = make_mode(1, roots, kRadius);
  CHECK(m.normalization() == 2.0);
  // quadrature oracle: int_0^1 (c r)^2 r dr = 1
  const double norm = oracles::integrate_ref(
      [&](double s) { return 4.0 * s * s * s; }, 0.0, 1.0);
  CHECK(std::abs(norm - 1.0) < 1e-12);
}

TEST_CASE("Bessel mode normalization matches the closed form and quadrature") {
  const std::vector<double> roots = modal_roots(1);
  const ModeShape m = make_mode(2, roots, kRadius);
  const double k2 = roots[0];
  CHECK(std::abs(m.normalization() - std::sqrt(2.0) / std::abs(oracles::j1_ref(k2))) <
        1e-12);
  const double c = m.normalization();
  const double norm = oracles::integrate_ref(
      [&](double s) {
        const double v = c * oracles::j1_ref(k2 * s);
        return v * v * s;
      },
      0.0, 1.0);
  CHECK(std::abs(norm - 1.0) < 1e-10);
}

TEST_CASE("scaled modes are orthonormal under r dr on (0, a)") {
  const std::vector<ModeShape> modes = make_modes(8, kRadius);
  for (int i = 0; i < 8; ++i) {
    for (int j = i; j < 8; ++j) {
      const double g = oracles::integrate_ref(
          [&](double r) { return modes[i].value(r) * modes[j].value(r) * r; },
          0.0, kRadius);
      if (i == j) {
        CHECK(std::abs(g - 1.0) <= 1e-10);
      } else {
        CHECK(std::abs(g) <= 1e-9);
      }
    }
  }
}

TEST_CASE("mode evaluation endpoints") {
  const std::vector<ModeShape> modes = make_modes(5, kRadius);
  for (const ModeShape& m : modes) {
    CHECK(m.value(0.0) == 0.0);
    if (m.index() >= 2) {
      // scaled endpoint identity: a phi'(a) = phi(a)
      const RadialEval e = m.eval(kRadius);
      CHECK(std::abs(kRadius * e.derivative - e.value) <=
            1e-10 * std::abs(e.value));
    }
  }
  CHECK_THROWS_AS(modes[0].eval(-1e-9), DomainError);
  CHECK_THROWS_AS(modes[0].eval(kRadius * 1.01), DomainError);
}

TEST_CASE("antiderivative matches midpoint quadrature") {
  const std::vector<ModeShape> modes = make_modes(8, kRadius);
  for (const ModeShape& m : modes) {
    for (const double frac : {0.3, 0.7, 1.0}) {
      const double r = frac * kRadius;
      const double ref = oracles::midpoint_ref(
          [&](double s) { return m.value(s); }, 0.0, r, 1 << 16);
      CHECK(std::abs(m.eval(r).antiderivative - ref) <=
            1e-8 * std::max(1e-3, std::abs(ref)));
    }
  }
}

TEST_CASE("radial ODE residual vanishes at random radii") {
  const std::vector<ModeShape> modes = make_modes(8, kRadius);
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  for (const ModeShape& m : modes) {
    if (m.index() == 1) continue;
    const double beta = m.eigenvalue() / kRadius;
    for (int trial = 0; trial < 50; ++trial) {
      const double r = dist(rng) * kRadius;
      // second derivative from values only (4th-order stencil), first
      // derivative analytic
      const double h = 3.7e-3 / beta;
      const double d2 =
          oracles::central_second_derivative([&](double s) { return m.value(s); }, r, h);
      const RadialEval e = m.eval(r);
      const double residual =
          r * r * d2 + r * e.derivative + (beta * beta * r * r - 1.0) * e.value;
      const double scale = r * r * std::abs(d2) + std::abs(r * e.derivative) +
                           std::abs((beta * beta * r * r - 1.0) * e.value);
      CHECK(std::abs(residual) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("projection of a basis mode is a unit vector") {
  const std::vector<ModeShape> modes = make_modes(6, kRadius);
  const TorqueProfile f = TorqueProfile::mode(modes[1], 1.0);
  const TorqueSpectrum spec =
      project_torque([&](double r) { return f(r); }, modes, 6);
  for (int i = 0; i < 6; ++i) {
    if (i == 1) {
      CHECK(std::abs(spec.coeffs[i] - 1.0) <= 1e-9);
    } else {
      CHECK(std::abs(spec.coeffs[i]) <= 1e-9);
    }
  }
}

TEST_CASE("projection of the linear profile against the quadrature oracle") {
  const std::vector<ModeShape> modes = make_modes(6, kRadius);
  const TorqueSpectrum spec = project_torque(
      [&](double r) { return r / kRadius; }, modes, 6);
  // f_1 = a/2 in closed form
  CHECK(std::abs(spec.coeffs[0] - kRadius / 2.0) <= 1e-12 * kRadius);
  for (int i = 0; i < 6; ++i) {
    const double ref = oracles::integrate_ref(
        [&](double r) { return (r / kRadius) * modes[i].value(r) * r; }, 0.0,
        kRadius);
    CHECK(std::abs(spec.coeffs[i] - ref) <= 1e-10 * std::max(1e-8, std::abs(ref)) + 1e-15);
  }
}

TEST_CASE("projection of zero torque") {
  const std::vector<ModeShape> modes = make_modes(4, kRadius);
  const TorqueSpectrum spec =
      project_torque([](double) { return 0.0; }, modes, 4);
  for (const auto& f : spec.coeffs) CHECK(std::abs(f) == 0.0);
  CHECK(spec.h_half_diag == 0.0);
}

TEST_CASE("h-half diagnostic sums exactly as written") {
  const std::vector<ModeShape> modes = make_modes(5, kRadius);
  const TorqueSpectrum spec =
      project_torque([&](double r) { return 1.0 + r / kRadius; }, modes, 5);
  double expected = 0.0;
  for (int i = 0; i < 5; ++i) {
    expected += std::norm(spec.coeffs[i]) / (i + 1);
  }
  CHECK(spec.h_half_diag == expected);
}

TEST_CASE("Parseval error is monotone nonincreasing on a smooth profile") {
  const int N = 8;
  const std::vector<ModeShape> modes = make_modes(N, kRadius);
  auto f = [](double) { return 1.0; };
  const TorqueSpectrum spec = project_torque(f, modes, N);
  double prev = -1.0;
  for (int n = 1; n <= N; ++n) {
    const double err2 = oracles::integrate_ref(
        [&](double r) {
          double partial = 0.0;
          for (int i = 0; i < n; ++i) {
            partial += spec.coeffs[i].real() * modes[i].value(r);
          }
          const double d = f(r) - partial;
          return d * d * r;
        },
        0.0, kRadius);
    if (prev >= 0.0) CHECK(err2 <= prev * (1.0 + 1e-12));
    prev = err2;
  }
}

TEST_CASE("boundary mismatch diagnostic reflects the endpoint defect") {
  const int N = 8;
  const std::vector<ModeShape> modes = make_modes(N, kRadius);
  // f = 1 violates the endpoint condition phi'(1) = phi(1), so the series
  // cannot match f at r = a; the mismatch is reported, not gated.
  const TorqueSpectrum spec =
      project_torque([](double) { return 1.0; }, modes, N);
  CHECK(spec.boundary_mismatch > 0.0);
  double series_at_a = 0.0;
  for (int i = 0; i < N; ++i) {
    series_at_a += spec.coeffs[i].real() * modes[i].value(kRadius);
  }
  CHECK(std::abs(spec.boundary_mismatch - std::abs(1.0 - series_at_a)) <= 1e-12);
}

TEST_CASE("sampled profiles project like their closed form") {
  const int N = 4;
  const std::vector<ModeShape> modes = make_modes(N, kRadius);
  auto f = [](double r) { return 1.0 + 50.0 * r; };
  std::vector<double> rs, fs;
  for (int i = 0; i <= 400; ++i) {
    const double r = kRadius * i / 400;
    rs.push_back(r);
    fs.push_back(f(r));
  }
  const TorqueProfile sampled = TorqueProfile::sampled(rs, fs);
  const TorqueSpectrum direct = project_torque(f, modes, N);
  const TorqueSpectrum interp =
      project_torque([&](double r) { return sampled(r); }, modes, N);
  for (int i = 0; i < N; ++i) {
    CHECK(std::abs(direct.coeffs[i] - interp.coeffs[i]) <=
          1e-6 * std::abs(direct.coeffs[0]));
  }
}

TEST_CASE("sampled profile validation") {
  CHECK_THROWS_AS(TorqueProfile::sampled({0.0}, {1.0}), ValidationError);
  CHECK_THROWS_AS(TorqueProfile::sampled({0.0, 0.0, 1.0}, {1.0, 2.0, 3.0}),
                  ValidationError);
}

TEST_CASE("mode index must not exceed the available roots") {
  const std::vector<double> roots = modal_roots(2);
  CHECK_THROWS_AS(make_mode(5, roots, kRadius), std::out_of_range);
  CHECK_THROWS_AS(make_mode(0, roots, kRadius), std::invalid_argument);
}
