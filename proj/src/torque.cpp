#include "torcyl/torque.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "torcyl/errors.hpp"

namespace torcyl {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw ValidationError("sampled profile needs at least two (r, f) pairs");
  }
  for (size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw ValidationError("sampled profile abscissae must be strictly increasing");
    }
  }
  std::vector<double> d(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  }
  slope_.assign(n, 0.0);
  slope_[0] = d[0];
  slope_[n - 1] = d[n - 2];
  for (size_t i = 1; i + 1 < n; ++i) {
    slope_[i] = (d[i - 1] * d[i] > 0.0) ? 0.5 * (d[i - 1] + d[i]) : 0.0;
  }
  // Fritsch-Carlson limiter keeps the interpolant monotone on each interval
  for (size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      slope_[i] = slope_[i + 1] = 0.0;
      continue;
    }
    const double alpha = slope_[i] / d[i];
    const double beta = slope_[i + 1] / d[i];
    const double s = alpha * alpha + beta * beta;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      slope_[i] = tau * alpha * d[i];
      slope_[i + 1] = tau * beta * d[i];
    }
  }
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const size_t i = static_cast<size_t>(it - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return y_[i] * (2 * t3 - 3 * t2 + 1) + h * slope_[i] * (t3 - 2 * t2 + t) +
         y_[i + 1] * (-2 * t3 + 3 * t2) + h * slope_[i + 1] * (t3 - t2);
}

TorqueProfile TorqueProfile::zero() {
  return TorqueProfile([](double) { return 0.0; }, "zero");
}

TorqueProfile TorqueProfile::uniform(double tau0) {
  return TorqueProfile([tau0](double) { return tau0; }, "uniform");
}

TorqueProfile TorqueProfile::linear(double tau0, double a) {
  if (!(a > 0.0)) throw ValidationError("linear torque: radius must be positive");
  return TorqueProfile([tau0, a](double r) { return tau0 * r / a; }, "linear");
}

TorqueProfile TorqueProfile::parabolic(double tau0, double a) {
  if (!(a > 0.0)) throw ValidationError("parabolic torque: radius must be positive");
  return TorqueProfile(
      [tau0, a](double r) { return tau0 * (r / a) * (r / a); }, "parabolic");
}

TorqueProfile TorqueProfile::mode(const ModeShape& shape, double amplitude) {
  return TorqueProfile(
      [shape, amplitude](double r) { return amplitude * shape.value(r); },
      "mode " + std::to_string(shape.index()));
}

TorqueProfile TorqueProfile::sampled(std::vector<double> r,
                                     std::vector<double> f) {
  auto interp = std::make_shared<MonotoneCubic>(std::move(r), std::move(f));
  return TorqueProfile([interp](double x) { return (*interp)(x); }, "sampled");
}

}  // namespace torcyl
