#pragma once

#include "phj/params.hpp"

namespace phj {

/// One member of the radial steady-state family: flat at height max_value() on
/// [0, theta], strictly decreasing on (theta, 1], zero at r = 1.
///
///   w_theta(r) = c0 * integral_{max(r,theta)}^1 (rho - theta^beta rho^{-(beta-1)})^{1/(p-1-q)} drho
///
/// value() evaluates the integral by adaptive Gauss-Kronrod quadrature to within
/// quad_tol; derivative() and second_derivative() use the closed forms. Immutable
/// after construction and safe to share across threads.
class SteadyState {
 public:
  SteadyState(const ProblemParams& params, double theta, double quad_tol = 1e-12);

  double value(double r) const;             // r in [0,1]
  double derivative(double r) const;        // 0 on [0,theta]; -c0 (r - theta^beta r^{1-beta})^{1/(p-1-q)} beyond
  double second_derivative(double r) const; // closed form on (theta,1]; 0 on [0,theta]
  double max_value() const { return max_value_; }

  /// r^{beta-1} chi(w'(r)) + r^beta/beta - theta^beta/beta, identically zero on
  /// (theta,1) for every family member. Rejects r outside (theta,1).
  double first_integral_residual(double r) const;

  double theta() const { return theta_; }
  double quad_tol() const { return quad_tol_; }
  const ProblemParams& params() const { return params_; }
  const DerivedConstants& constants() const { return consts_; }

 private:
  double integrand(double rho) const;
  double grading_term(double rho) const;  // theta^beta rho^{-(beta-1)}, 0 when theta == 0

  ProblemParams params_;
  DerivedConstants consts_;
  double theta_;
  double quad_tol_;
  double slope_exp_;  // 1/(p-1-q)
  double max_value_;
};

/// Inverts the strictly decreasing map theta -> ||w_theta||_inf by bisection.
/// M must lie in [0, c0/alpha]; the endpoints map exactly (0 -> 1, c0/alpha -> 0).
double theta_from_max(const ProblemParams& params, double M,
                      double theta_tol = 1e-10, double quad_tol = 1e-12);

}  // namespace phj
