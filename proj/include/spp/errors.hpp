#pragma once

#include <stdexcept>
#include <string>

namespace spp {

/// Precondition violated by the caller (bad argument, wrong region, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of subdivisions. Carries what it had.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double estimate_re, double estimate_im,
                  double error_bound)
      : NumericalError(what),
        estimate_re_(estimate_re),
        estimate_im_(estimate_im),
        error_bound_(error_bound) {}

  double estimate_re() const noexcept { return estimate_re_; }
  double estimate_im() const noexcept { return estimate_im_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_re_;
  double estimate_im_;
  double error_bound_;
};

/// Re(eps_d + eps_m) >= 0 or Re(eps_m) >= 0: the interface carries no bound SPP.
class NoBoundModeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// eps_d + eps_m = 0: the closed forms hit the surface-plasmon resonance.
class ResonanceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A TM reduced Green entry was requested on top of a real-axis pole.
class PoleProximityError : public NumericalError {
 public:
  PoleProximityError(const std::string& what, double distance)
      : NumericalError(what), distance_(distance) {}
  /// |k_par - k_spp| in rad/m.
  double distance() const noexcept { return distance_; }

 private:
  double distance_;
};

/// Input lies on a branch for which only the oscillatory form is defined.
class UnsupportedBranchError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A physical sign check failed (e.g. negative decay rate). Indicates a bug.
class ConsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace spp
