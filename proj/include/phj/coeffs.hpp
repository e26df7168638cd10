#pragma once

#include "phj/params.hpp"

namespace phj {

/// Coefficients of the uniformly parabolic approximation
///   du/dt = div(a(|Du|^2) Du) + b(|Du|^2),
///   a(xi) = (eps^2 + xi)^{(p-2)/2},  b(xi) = (eps^2 + xi)^{q/2} - eps^q
/// on xi in [0, 1/eps], frozen at their xi = 1/eps values beyond (bounded,
/// increasing, Lipschitz). b(0) = 0, so constants remain stationary.
class RegularizedCoefficients {
 public:
  RegularizedCoefficients(const ProblemParams& params, double epsilon);

  double a(double xi) const;
  double b(double xi) const;

  /// |d/dg b(g^2)|: the source term's characteristic speed at gradient g.
  /// Bounded by ~ q eps^{q-1}; used by the time-step stability policy.
  double source_speed(double g) const;

  double epsilon() const { return epsilon_; }
  const ProblemParams& params() const { return params_; }

 private:
  double clamp_xi(double xi) const;

  ProblemParams params_;
  double epsilon_;
  double eps_sq_;
  double eps_q_;
  double xi_cap_;   // 1/eps
  double a_exp_;    // (p-2)/2
  double b_exp_;    // q/2
};

}  // namespace phj
