#ifndef TORCYL_ERRORS_HPP
#define TORCYL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace torcyl {

// Base class for all errors raised by the library. The CLI maps each
// subclass to a distinct exit code.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid physical or geometric parameters (strong convexity violations,
// nonpositive density, bad config values).
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// A modal axial wavenumber came out exactly zero, so the modal amplitude
// 1/(mu*gamma_n) is undefined. Only reachable with purely elastic moduli.
class ResonanceError : public Error {
public:
  ResonanceError(int mode, const std::string& msg) : Error(msg), mode_(mode) {}
  int mode() const { return mode_; }

private:
  int mode_;
};

// Root bracketing failed to isolate the requested number of sign changes
// within the search bound.
class RootSearchError : public Error {
public:
  explicit RootSearchError(const std::string& msg) : Error(msg) {}
};

// Adaptive quadrature exhausted its subdivision depth.
class QuadratureError : public Error {
public:
  explicit QuadratureError(const std::string& msg) : Error(msg) {}
};

// Evaluation point outside the closed cylinder.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Verification grid cannot resolve the highest retained mode.
class GridError : public Error {
public:
  explicit GridError(const std::string& msg) : Error(msg) {}
};

}  // namespace torcyl

#endif  // TORCYL_ERRORS_HPP
