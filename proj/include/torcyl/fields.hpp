#ifndef TORCYL_FIELDS_HPP
#define TORCYL_FIELDS_HPP

#include <array>

#include "torcyl/solver.hpp"

namespace torcyl {

// Displacement, tractions and the e_z scalar potential at one point.
// For torsional solutions u_r = u_z = 0 and t_rr = t_rz = t_zz = 0
// identically; t_zr is the same stored value as t_rz.
struct FieldSample {
  double r = 0.0, theta = 0.0, z = 0.0;
  std::array<Complex, 3> u_cart{};  // (u_1, u_2, u_3)
  std::array<Complex, 3> u_cyl{};   // (u_r, u_theta, u_z)
  Complex t_rr{}, t_rtheta{}, t_rz{}, t_ztheta{}, t_zz{};
  Complex psi{};  // m^2

  Complex t_zr() const { return t_rz; }
};

// Circumferential sum S = sum f_n v_n and its analytic derivatives;
// u_theta = -S. S_over_r carries the r -> 0 limit.
struct ThetaField {
  Complex S{}, dS_dr{}, S_over_r{}, dS_dz{};
};

ThetaField theta_field(const ModalSolution& sol, double r, double z);

// u_cart = (sum f_n v_n) (sin theta, -cos theta, 0); u_cyl = (0, -sum, 0).
FieldSample displacement(const ModalSolution& sol, double r, double theta,
                         double z);

// All five traction components from analytic modal derivatives:
//   t_rtheta = mu (d_r u_theta - u_theta / r), t_ztheta = mu d_z u_theta,
// the rest vanish identically. The 1/r term at r = 0 uses the modal limit.
FieldSample tractions(const ModalSolution& sol, double r, double theta,
                      double z);

// psi(r, z) = sum_n (int_0^r phi_n^a) f_n q_n(z) / (mu gamma_n), with the
// closed-form antiderivatives; u = curl(psi e_z) so u_theta = -d_r psi.
Complex potential_psi(const ModalSolution& sol, double r, double z);

// Displacement, tractions and potential together.
FieldSample sample(const ModalSolution& sol, double r, double theta, double z);

}  // namespace torcyl

#endif  // TORCYL_FIELDS_HPP
