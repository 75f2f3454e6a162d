#ifndef TORCYL_TESTS_ORACLES_HPP
#define TORCYL_TESTS_ORACLES_HPP

// Brute-force reference implementations for the test suite. Nothing here
// shares an evaluation path with the library: Bessel values come from the
// raw alternating power series summed in quad precision, integrals from
// composite Simpson, and q profiles from the textbook exponential form.

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// J_nu(x), nu in {0,1,2}, by the power series
// sum_m (-1)^m (x/2)^{2m+nu} / (m! (m+nu)!) in __float128. The largest
// term is ~e^x/sqrt(2 pi x), so quad precision keeps the cancellation
// error below ~1e-13 absolute for x up to ~50.
inline double bessel_ref(int nu, double x) {
  if (x < 0.0) throw std::invalid_argument("bessel_ref: x must be >= 0");
  __float128 half = static_cast<__float128>(x) / 2;
  __float128 term = 1;
  for (int i = 1; i <= nu; ++i) term *= half / i;
  __float128 sum = term;
  const __float128 q = half * half;
  for (int m = 1; m <= 600; ++m) {
    term *= -q / (static_cast<__float128>(m) * (m + nu));
    sum += term;
    __float128 mag = term < 0 ? -term : term;
    if (mag < 1e-60 && m > x) break;
  }
  return static_cast<double>(sum);
}

inline double j0_ref(double x) { return bessel_ref(0, x); }
inline double j1_ref(double x) { return bessel_ref(1, x); }
inline double j2_ref(double x) { return bessel_ref(2, x); }
inline double j1p_ref(double x) {
  return x == 0.0 ? 0.5 : j0_ref(x) - j1_ref(x) / x;
}

// First `count` positive zeros of J2 by sign-scan plus bisection on the
// series evaluation, over (0.1, 50).
inline std::vector<double> j2_zeros_ref(int count) {
  std::vector<double> zeros;
  double lo = 0.1;
  double flo = j2_ref(lo);
  for (double hi = lo + 0.05; hi <= 50.0 && static_cast<int>(zeros.size()) < count;
       hi += 0.05) {
    const double fhi = j2_ref(hi);
    if ((flo < 0.0) != (fhi < 0.0)) {
      double a = lo, b = hi, fa = flo;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        const double fm = j2_ref(mid);
        if ((fa < 0.0) != (fm < 0.0)) {
          b = mid;
        } else {
          a = mid;
          fa = fm;
        }
      }
      zeros.push_back(0.5 * (a + b));
    }
    lo = hi;
    flo = fhi;
  }
  if (static_cast<int>(zeros.size()) < count) {
    throw std::runtime_error("j2_zeros_ref: not enough zeros below 50");
  }
  return zeros;
}

// Composite Simpson with 2^14 intervals; error ~((k L / n)^4 / 180), far
// below 1e-12 relative for every integrand in this suite.
inline double integrate_ref(const std::function<double(double)>& fn, double lo,
                            double hi, int intervals = 1 << 14) {
  if (intervals % 2 == 1) ++intervals;
  const double h = (hi - lo) / intervals;
  double sum = fn(lo) + fn(hi);
  for (int i = 1; i < intervals; ++i) {
    sum += fn(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// Composite midpoint rule.
inline double midpoint_ref(const std::function<double(double)>& fn, double lo,
                           double hi, int intervals) {
  const double h = (hi - lo) / intervals;
  double sum = 0.0;
  for (int i = 0; i < intervals; ++i) sum += fn(lo + (i + 0.5) * h);
  return sum * h;
}

// Textbook form of the axial profile, valid while exp(|gamma| h) stays
// finite; long double arithmetic for headroom.
inline std::complex<double> q_naive(std::complex<double> gamma, double h,
                                    double z) {
  const std::complex<long double> g(gamma.real(), gamma.imag());
  const std::complex<long double> num =
      std::exp(g * static_cast<long double>(h - z)) -
      std::exp(g * static_cast<long double>(z - h));
  const std::complex<long double> den =
      std::exp(-g * static_cast<long double>(h)) +
      std::exp(g * static_cast<long double>(h));
  const std::complex<long double> q = num / den;
  return {static_cast<double>(q.real()), static_cast<double>(q.imag())};
}

// 4th-order central first derivative of a complex-valued function.
template <typename Fn>
std::complex<double> central_derivative(const Fn& fn, double x, double h) {
  return (-fn(x + 2 * h) + 8.0 * fn(x + h) - 8.0 * fn(x - h) + fn(x - 2 * h)) /
         (12.0 * h);
}

// 4th-order central second derivative (5-point).
template <typename Fn>
double central_second_derivative(const Fn& fn, double x, double h) {
  return (-fn(x + 2 * h) + 16.0 * fn(x + h) - 30.0 * fn(x) + 16.0 * fn(x - h) -
          fn(x - 2 * h)) /
         (12.0 * h * h);
}

}  // namespace oracles

#endif  // TORCYL_TESTS_ORACLES_HPP
