#pragma once

#include <cmath>

namespace phj {

/// Parameters of  du/dt = div(|Du|^{p-2} Du) + |Du|^q  on the unit ball of R^N
/// with homogeneous Dirichlet data. Admissible range: p >= 2, 0 < q < p-1, N >= 2.
struct ProblemParams {
  double p = 2.0;
  double q = 0.5;
  int dim = 2;

  bool operator==(const ProblemParams&) const = default;
};

/// Constants of the radial steady-state family:
///   alpha = (p-q)/(p-1-q) > 1
///   beta  = 1 + (N-1)(p-1-q)/(p-1) > 1
///   c0    = ((p-1-q)/((p-1) beta))^{1/(p-1-q)} > 0
/// so that w_theta(r) = c0 * integral_{max(r,theta)}^1 (rho - theta^beta rho^{-(beta-1)})^{1/(p-1-q)} drho
/// and the zero-plateau member has the closed form w_0(r) = (c0/alpha)(1 - r^alpha).
struct DerivedConstants {
  double alpha;
  double beta;
  double c0;
};

/// Throws std::invalid_argument naming the violated inequality.
void validate(const ProblemParams& params);

DerivedConstants derive_constants(const ProblemParams& params);

/// chi(z) = (p-1)/(p-1-q) |z|^{p-2-q} z. Odd and strictly increasing; chi(0) = 0.
double chi(double z, const ProblemParams& params);

/// Radial stationary operator f(r, mu, zeta) =
///   -(p-1)|mu|^{p-2} zeta - (N-1)/r |mu|^{p-2} mu - |mu|^q,  r in (0,1).
/// Steady profiles satisfy f(r, w', w'') = 0 where they are smooth.
double stationary_residual_radial(double r, double mu, double zeta,
                                  const ProblemParams& params);

/// The p-Laplacian part alone (no |mu|^q source term).
double p_laplace_residual_radial(double r, double mu, double zeta,
                                 const ProblemParams& params);

namespace detail {

/// |x|^e with |0|^0 = 1 (the p = 2 convention for |mu|^{p-2}) and |0|^e = 0 for e > 0.
/// Bases are taken positive before exponentiation so fractional powers never see a sign.
double pow_abs(double x, double e);

/// sign(x) |x|^e; 0 at x = 0.
double signed_pow_abs(double x, double e);

/// x^e for x >= 0 with fast paths for the handful of exponents the solver hits every step.
inline double pow_pos(double x, double e) {
  if (e == 0.0) return 1.0;
  if (e == 1.0) return x;
  if (e == 0.5) return std::sqrt(x);
  if (e == 0.25) return std::sqrt(std::sqrt(x));
  if (e == 2.0) return x * x;
  if (e == 1.5) return x * std::sqrt(x);
  return std::pow(x, e);
}

}  // namespace detail
}  // namespace phj
