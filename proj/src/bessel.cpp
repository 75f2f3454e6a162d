#include "torcyl/bessel.hpp"

#include <cmath>
#include <stdexcept>

#include "torcyl/errors.hpp"

namespace torcyl {

namespace {

// Regime switch between the alternating power series and the backward
// recurrence. At x = 6 the largest series term is ~I0(6) ~ 67, so the
// cancellation error stays below ~1e-14 absolute; the recurrence covers
// every larger argument at ~1e-15. Frozen; covered by the oracle
// cross-check test on x in {0.1, ..., 40}.
constexpr double kSeriesCutoff = 6.0;
constexpr int kSeriesMaxTerms = 80;

// Scan step for the root bracketing. Consecutive zeros of J2 are separated
// by more than 3, so one step can never straddle two roots.
constexpr double kScanStep = 0.1;

void j01_series(double x, double& j0, double& j1) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  j0 = term;
  for (int m = 1; m <= kSeriesMaxTerms; ++m) {
    term *= -q / (static_cast<double>(m) * m);
    j0 += term;
    if (std::abs(term) < 1e-18) break;
  }
  term = 0.5 * x;
  j1 = term;
  for (int m = 1; m <= kSeriesMaxTerms; ++m) {
    term *= -q / (static_cast<double>(m) * (m + 1));
    j1 += term;
    if (std::abs(term) < 1e-18) break;
  }
}

void j01_recurrence(double x, double& j0, double& j1) {
  // Backward (Miller) recurrence from an order well above x, normalized
  // with J0 + 2*sum_{k>=1} J_{2k} = 1. Start order grows like
  // x + 15 x^(1/3) so the seeded order is deep in the decaying regime.
  int start = static_cast<int>(x + 15.0 * std::cbrt(x) + 30.0);
  if (start % 2 == 1) ++start;
  double prev = 0.0;        // J_{n+1} (unnormalized)
  double curr = 1e-300;     // J_n
  double sum = 0.0;
  j1 = 0.0;
  for (int n = start; n >= 1; --n) {
    const double next = (2.0 * n / x) * curr - prev;  // J_{n-1}
    prev = curr;
    curr = next;
    const int order = n - 1;
    if (order == 1) j1 = curr;
    if (order > 0 && order % 2 == 0) sum += 2.0 * curr;
    if (std::abs(curr) > 1e250) {
      prev *= 1e-250;
      curr *= 1e-250;
      sum *= 1e-250;
      j1 *= 1e-250;
    }
  }
  sum += curr;  // + J_0
  j0 = curr / sum;
  j1 /= sum;
}

}  // namespace

BesselEval bessel_j(double x) {
  if (!(x >= 0.0)) {
    throw std::invalid_argument("bessel_j: argument must be >= 0");
  }
  if (x == 0.0) {
    return {x, 1.0, 0.0, 0.5};
  }
  double j0 = 0.0;
  double j1 = 0.0;
  if (x <= kSeriesCutoff) {
    j01_series(x, j0, j1);
  } else {
    j01_recurrence(x, j0, j1);
  }
  return {x, j0, j1, j0 - j1 / x};
}

double bessel_j2(double x) {
  const BesselEval b = bessel_j(x);
  if (x == 0.0) return 0.0;
  return 2.0 * b.j1 / x - b.j0;
}

std::vector<double> modal_roots(int count, double search_bound) {
  if (count < 1) {
    throw std::invalid_argument("modal_roots: count must be >= 1");
  }
  const double bound =
      search_bound > 0.0 ? search_bound : (count + 2) * M_PI + 4.0;

  std::vector<double> roots;
  roots.reserve(count);
  double lo = kScanStep;  // J2 > 0 on (0, k_2); skipping the origin is safe
  double flo = bessel_j2(lo);
  for (double hi = lo + kScanStep;
       hi <= bound + 0.5 * kScanStep && static_cast<int>(roots.size()) < count;
       hi += kScanStep) {
    const double fhi = bessel_j2(hi);
    if ((flo < 0.0) != (fhi < 0.0)) {
      // bisection to near machine width
      double a = lo, b = hi, fa = flo;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        const double fm = bessel_j2(mid);
        if ((fa < 0.0) != (fm < 0.0)) {
          b = mid;
        } else {
          a = mid;
          fa = fm;
        }
      }
      double k = 0.5 * (a + b);
      // Newton polish on J2; J2'(x) = J1(x) - 2 J2(x)/x
      for (int it = 0; it < 3; ++it) {
        const BesselEval be = bessel_j(k);
        const double f = 2.0 * be.j1 / k - be.j0;
        const double fp = be.j1 - 2.0 * f / k;
        if (fp == 0.0) break;
        k -= f / fp;
      }
      const BesselEval be = bessel_j(k);
      if (std::abs(k * be.j1p - be.j1) > 1e-12) {
        throw RootSearchError("modal_roots: polish failed to reach residual 1e-12 near k = " +
                              std::to_string(k));
      }
      roots.push_back(k);
    }
    lo = hi;
    flo = fhi;
  }
  if (static_cast<int>(roots.size()) < count) {
    throw RootSearchError("modal_roots: found " + std::to_string(roots.size()) +
                          " of " + std::to_string(count) +
                          " roots within search bound " + std::to_string(bound));
  }
  return roots;
}

}  // namespace torcyl
