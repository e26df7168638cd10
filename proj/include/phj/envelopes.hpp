#pragma once

#include "phj/params.hpp"
#include "phj/steady.hpp"

namespace phj {

/// Decreasing bound W(t) on the radial derivative of solutions, from
///   dW/dt + (N-1) a_eps(W^2) W = 0,  W(0) = 2 ||grad u0||_inf.
/// epsilon = 0 selects the limiting ODE with its closed form:
///   p > 2:  W(t) = (W0^{2-p} + (p-2)(N-1) t)^{-1/(p-2)}
///   p = 2:  W(t) = W0 exp(-(N-1) t)
/// epsilon > 0 integrates the regularized ODE with classic fourth-order RK.
class GradientEnvelope {
 public:
  GradientEnvelope(const ProblemParams& params, double w0, double epsilon = 0.0);

  double value(double t) const;

  double w0() const { return w0_; }
  double epsilon() const { return epsilon_; }

 private:
  ProblemParams params_;
  double w0_;
  double epsilon_;
  double rk_dt_;
};

/// Scaled steady-state subsolution v_lambda(x) = lambda^{(p-q)/(p-1-q)} w_0(|x-x0|/lambda)
/// on the ball of radius lambda about a point at distance |x0| from the centre.
/// A stationary solution on its own ball, used to pin M_infinity > 0.
class Barrier {
 public:
  Barrier(const ProblemParams& params, double center_offset, double lambda,
          double quad_tol = 1e-12);

  double value(double s) const;                  // s = distance from x0, in [0, lambda]
  double stationarity_residual(double s) const;  // f with the scaled closed-form derivatives
  double sup_norm() const { return scale_ * w0_.max_value(); }

  double lambda() const { return lambda_; }
  double center_offset() const { return center_offset_; }

 private:
  SteadyState w0_;
  double center_offset_;
  double lambda_;
  double scale_;  // lambda^alpha
};

/// Smallest admissible a priori bound
///   A0 = 2^{1/(p-1-q)} + 2 (1 + ||u0||_inf + ||grad u0||_inf).
double a_priori_A0(double u0_sup, double u0_lip, const ProblemParams& params);

/// Barrier radius lambda_m = min{ 1 - |x0|, (m alpha / c0)^{(p-1-q)/(p-q)} } for
/// data bounded below by m near x0.
double barrier_lambda_m(double center_offset, double m, const ProblemParams& params);

}  // namespace phj
