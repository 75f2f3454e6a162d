#include "torcyl/fields.hpp"

#include <cmath>

#include "torcyl/errors.hpp"

namespace torcyl {

namespace {

void check_point(const ModalSolution& sol, double r, double z) {
  const double a = sol.geometry.radius;
  const double h = sol.geometry.height;
  if (!(r >= 0.0) || r > a * (1.0 + 1e-12) || !(z >= 0.0) ||
      z > h * (1.0 + 1e-12)) {
    throw DomainError("point (r = " + std::to_string(r) +
                      ", z = " + std::to_string(z) +
                      ") outside the closed cylinder");
  }
}

}  // namespace

ThetaField theta_field(const ModalSolution& sol, double r, double z) {
  check_point(sol, r, z);
  const double h = sol.geometry.height;
  ThetaField tf;
  for (int i = 0; i < sol.truncation(); ++i) {
    const ModalRoot& mode = sol.modes[i];
    const ModeShape shape = sol.shape(i);
    const Complex amp =
        sol.spectrum.coeffs[i] / (sol.material.mu * mode.gamma_n);
    const Complex q = q_profile(mode.gamma_n, h, z);
    const Complex dq = q_profile_dz(mode.gamma_n, h, z);
    const RadialEval re = shape.eval(r);
    tf.S += amp * q * re.value;
    tf.dS_dr += amp * q * re.derivative;
    tf.S_over_r += amp * q * shape.value_over_r(r);
    tf.dS_dz += amp * dq * re.value;
  }
  return tf;
}

FieldSample displacement(const ModalSolution& sol, double r, double theta,
                         double z) {
  const ThetaField tf = theta_field(sol, r, z);
  FieldSample fs;
  fs.r = r;
  fs.theta = theta;
  fs.z = z;
  fs.u_cart = {tf.S * std::sin(theta), -tf.S * std::cos(theta), Complex{}};
  fs.u_cyl = {Complex{}, -tf.S, Complex{}};
  return fs;
}

FieldSample tractions(const ModalSolution& sol, double r, double theta,
                      double z) {
  const ThetaField tf = theta_field(sol, r, z);
  FieldSample fs;
  fs.r = r;
  fs.theta = theta;
  fs.z = z;
  const Complex mu = sol.material.mu;
  // u_theta = -S; the remaining components vanish for a torsional field
  fs.t_rtheta = -mu * (tf.dS_dr - tf.S_over_r);
  fs.t_ztheta = -mu * tf.dS_dz;
  fs.t_rr = Complex{};
  fs.t_rz = Complex{};
  fs.t_zz = Complex{};
  return fs;
}

Complex potential_psi(const ModalSolution& sol, double r, double z) {
  check_point(sol, r, z);
  const double h = sol.geometry.height;
  Complex psi{};
  for (int i = 0; i < sol.truncation(); ++i) {
    const ModalRoot& mode = sol.modes[i];
    const Complex amp =
        sol.spectrum.coeffs[i] / (sol.material.mu * mode.gamma_n);
    psi += amp * q_profile(mode.gamma_n, h, z) * sol.shape(i).eval(r).antiderivative;
  }
  return psi;
}

FieldSample sample(const ModalSolution& sol, double r, double theta, double z) {
  const ThetaField tf = theta_field(sol, r, z);
  FieldSample fs;
  fs.r = r;
  fs.theta = theta;
  fs.z = z;
  fs.u_cart = {tf.S * std::sin(theta), -tf.S * std::cos(theta), Complex{}};
  fs.u_cyl = {Complex{}, -tf.S, Complex{}};
  const Complex mu = sol.material.mu;
  fs.t_rtheta = -mu * (tf.dS_dr - tf.S_over_r);
  fs.t_ztheta = -mu * tf.dS_dz;
  fs.psi = potential_psi(sol, r, z);
  return fs;
}

}  // namespace torcyl
