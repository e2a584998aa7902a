#pragma once

#include <vector>

#include "kpp/profiles.hpp"
#include "kpp/reaction.hpp"

namespace kpp {

/// The saturation ODE phi' = f(phi) solved globally in time with the
/// normalization phi(0) = 1/2. Dense output by cubic Hermite interpolation
/// on accepted steps; below the computed range the linearization at 0 is
/// used (phi ~ c e^{f'(0)t}), above it the linearization at 1.
class LogisticProfile {
public:
  LogisticProfile(std::vector<double> t, std::vector<double> y,
                  std::vector<double> dy, double rate0, double rate1);

  double eval(double t) const;
  double t_min() const { return t_.front(); }
  double t_max() const { return t_.back(); }

  /// The unique T_m with phi(T_m) = m, to 1e-10 in value.
  double level_time(double m) const;

private:
  std::vector<double> t_, y_, dy_;
  double rate0_;  // f'(0), growth rate of the t -> -inf tail
  double rate1_;  // -f'(1), decay rate of 1 - phi as t -> +inf
};

/// Integrates phi' = f(phi) from phi(0)=1/2 forward to t_hi and (as a
/// transformed forward problem) backward to t_lo, with local relative
/// error <= tol per step.
LogisticProfile solve_profile(const Nonlinearity& f, double t_lo = -60.0,
                              double t_hi = 30.0, double tol = 1e-10);

/// u0^{-1}(phi(T_m - T)): the homogeneous theory's predicted location of
/// the level set E_m(T).
double predict_level_position(const LogisticProfile& profile,
                              const InitialData& u0, double m, double T);

}  // namespace kpp
