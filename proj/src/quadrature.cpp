#include "torcyl/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "torcyl/errors.hpp"

namespace torcyl {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence up to degree n
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

constexpr int kPanelOrder = 20;
constexpr int kMaxDepth = 48;

double panel_gl(const std::function<double(double)>& fn, double lo, double hi,
                double* l1 = nullptr) {
  const GaussLegendreRule& rule = gauss_legendre(kPanelOrder);
  const double mid = 0.5 * (lo + hi);
  const double halfw = 0.5 * (hi - lo);
  double sum = 0.0, abs_sum = 0.0;
  for (int i = 0; i < kPanelOrder; ++i) {
    const double v = fn(mid + halfw * rule.nodes[i]);
    sum += rule.weights[i] * v;
    abs_sum += rule.weights[i] * std::abs(v);
  }
  if (l1) *l1 = halfw * abs_sum;
  return halfw * sum;
}

double refine(const std::function<double(double)>& fn, double lo, double hi,
              double coarse, double tol_per_width, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = panel_gl(fn, lo, mid);
  const double right = panel_gl(fn, mid, hi);
  const double fine = left + right;
  if (std::abs(fine - coarse) <= tol_per_width * (hi - lo)) {
    return fine;
  }
  if (depth >= kMaxDepth) {
    throw QuadratureError("adaptive_integrate: subdivision depth exceeded on [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return refine(fn, lo, mid, left, tol_per_width, depth + 1) +
         refine(fn, mid, hi, right, tol_per_width, depth + 1);
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, build_rule(n)).first;
  }
  return it->second;
}

double adaptive_integrate(const std::function<double(double)>& fn, double lo,
                          double hi, double rel_tol, int initial_panels) {
  if (!(hi > lo)) throw std::invalid_argument("adaptive_integrate: hi must exceed lo");
  if (initial_panels < 1) initial_panels = 1;
  const double width = hi - lo;
  // First pass: coarse values and the L1 scale setting the absolute target.
  std::vector<double> coarse(initial_panels);
  double l1 = 0.0;
  for (int p = 0; p < initial_panels; ++p) {
    const double plo = lo + width * p / initial_panels;
    const double phi = lo + width * (p + 1) / initial_panels;
    double panel_l1 = 0.0;
    coarse[p] = panel_gl(fn, plo, phi, &panel_l1);
    l1 += panel_l1;
  }
  const double tol_per_width =
      rel_tol * std::max(l1, 1e-300) / width;
  double total = 0.0;
  for (int p = 0; p < initial_panels; ++p) {
    const double plo = lo + width * p / initial_panels;
    const double phi = lo + width * (p + 1) / initial_panels;
    total += refine(fn, plo, phi, coarse[p], tol_per_width, 0);
  }
  return total;
}

}  // namespace torcyl
