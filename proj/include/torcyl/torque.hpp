#ifndef TORCYL_TORQUE_HPP
#define TORCYL_TORQUE_HPP

#include <functional>
#include <string>
#include <vector>

#include "torcyl/modal_basis.hpp"

namespace torcyl {

// Radial torque profile applied on the bottom face. Wraps a callable so
// both closed-form and sampled (interpolated) profiles project the same way.
class TorqueProfile {
public:
  using Fn = std::function<double(double)>;

  TorqueProfile() = default;
  TorqueProfile(Fn fn, std::string description)
      : fn_(std::move(fn)), description_(std::move(description)) {}

  double operator()(double r) const { return fn_(r); }
  const std::string& description() const { return description_; }
  bool valid() const { return static_cast<bool>(fn_); }

  static TorqueProfile zero();
  static TorqueProfile uniform(double tau0);
  static TorqueProfile linear(double tau0, double a);     // tau0 * r / a
  static TorqueProfile parabolic(double tau0, double a);  // tau0 * (r/a)^2
  static TorqueProfile mode(const ModeShape& shape, double amplitude);
  // Monotone-cubic interpolant of strictly increasing samples covering [0, a].
  static TorqueProfile sampled(std::vector<double> r, std::vector<double> f);

private:
  Fn fn_;
  std::string description_;
};

// Fritsch-Carlson monotone cubic interpolation on strictly increasing nodes.
class MonotoneCubic {
public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

private:
  std::vector<double> x_, y_, slope_;
};

}  // namespace torcyl

#endif  // TORCYL_TORQUE_HPP
