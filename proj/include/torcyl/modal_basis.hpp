#ifndef TORCYL_MODAL_BASIS_HPP
#define TORCYL_MODAL_BASIS_HPP

#include <complex>
#include <functional>
#include <vector>

namespace torcyl {

struct RadialEval {
  double value;           // phi_n^a(r)
  double derivative;      // d/dr phi_n^a(r)
  double antiderivative;  // int_0^r phi_n^a(s) ds
};

// One member of the orthonormal torsional basis on (0, a) with weight r dr.
// Mode 1 is the linear shape 2 r / a^2; modes n >= 2 are the normalized
// Bessel shapes c_n J1(k_n r / a) / a with k_n from modal_roots.
class ModeShape {
public:
  ModeShape(int n, double k, double c, double a)
      : n_(n), k_(k), c_(c), a_(a) {}

  int index() const { return n_; }
  double eigenvalue() const { return k_; }   // 0 for the linear mode
  double normalization() const { return c_; }
  double radius() const { return a_; }

  // Throws DomainError unless 0 <= r <= a.
  RadialEval eval(double r) const;

  double value(double r) const { return eval(r).value; }

  // phi_n^a(r) / r, continued through r = 0 by its limit phi_n^a'(0).
  double value_over_r(double r) const;

private:
  int n_;
  double k_;
  double c_;
  double a_;
};

ModeShape make_mode(int n, const std::vector<double>& roots, double a);

// Convenience: modes 1..count for the given radius.
std::vector<ModeShape> make_modes(int count, double a);

// Dini coefficients of a bottom-face torque profile, plus decay diagnostics.
struct TorqueSpectrum {
  std::vector<std::complex<double>> coeffs;  // f_1 .. f_N
  double h_half_diag = 0.0;       // sum |f_n|^2 / n over the retained modes
  double decay_exponent = 0.0;    // least-squares slope of log|f_n|^2 vs log n
  double boundary_mismatch = 0.0; // |f(a) - sum f_n phi_n^a(a)|
  int truncation() const { return static_cast<int>(coeffs.size()); }
};

// f_n = int_0^a f(r) phi_n^a(r) r dr for n = 1..N by adaptive Gauss-Legendre
// with relative tolerance 1e-10, panels matched to the oscillation scale a/k_n.
TorqueSpectrum project_torque(const std::function<double(double)>& f,
                              const std::vector<ModeShape>& modes, int N);

}  // namespace torcyl

#endif  // TORCYL_MODAL_BASIS_HPP
