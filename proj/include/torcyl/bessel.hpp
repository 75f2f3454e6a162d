#ifndef TORCYL_BESSEL_HPP
#define TORCYL_BESSEL_HPP

#include <vector>

namespace torcyl {

// J0, J1 and J1' at a common real argument x >= 0.
struct BesselEval {
  double x;
  double j0;
  double j1;
  double j1p;  // d/dx J1(x) = J0(x) - J1(x)/x
};

// Evaluates J0(x), J1(x), J1'(x) with absolute error below 1e-13.
// Power series up to x = 6, normalized backward recurrence beyond.
BesselEval bessel_j(double x);

// J2(x) = 2 J1(x)/x - J0(x); the positive zeros of J2 are exactly the
// solutions of k J1'(k) = J1(k), which index the torsional modes n >= 2.
double bessel_j2(double x);

// First `count` positive solutions of k J1'(k) = J1(k), strictly increasing.
// A sign-change scan with step well below the minimal root gap (~pi)
// brackets every zero of J2 up to the search bound, then bisection plus a
// Newton polish drives the residual |k J1'(k) - J1(k)| below 1e-12.
// `search_bound` <= 0 selects the default bound (count + 2)*pi + 4, which
// covers the asymptotic zero locations with margin.
std::vector<double> modal_roots(int count, double search_bound = 0.0);

}  // namespace torcyl

#endif  // TORCYL_BESSEL_HPP
