#include "phj/params.hpp"

#include <stdexcept>
#include <string>

namespace phj {

void validate(const ProblemParams& params) {
  if (!(params.p >= 2.0))
    throw std::invalid_argument("invalid parameters: p >= 2 violated (p = " +
                                std::to_string(params.p) + ")");
  if (!(params.q > 0.0))
    throw std::invalid_argument("invalid parameters: 0 < q violated (q = " +
                                std::to_string(params.q) + ")");
  if (!(params.q < params.p - 1.0))
    throw std::invalid_argument("invalid parameters: q < p-1 violated (q = " +
                                std::to_string(params.q) + ", p-1 = " +
                                std::to_string(params.p - 1.0) + ")");
  if (params.dim < 2)
    throw std::invalid_argument("invalid parameters: dim >= 2 violated (dim = " +
                                std::to_string(params.dim) + ")");
}

DerivedConstants derive_constants(const ProblemParams& params) {
  validate(params);
  const double p = params.p, q = params.q;
  const double N = static_cast<double>(params.dim);
  DerivedConstants c;
  c.alpha = (p - q) / (p - 1.0 - q);
  c.beta = 1.0 + (N - 1.0) * (p - 1.0 - q) / (p - 1.0);
  c.c0 = std::pow((p - 1.0 - q) / ((p - 1.0) * c.beta), 1.0 / (p - 1.0 - q));
  return c;
}

double chi(double z, const ProblemParams& params) {
  // |z|^{p-2-q} z == sign(z) |z|^{p-1-q}; the exponent p-1-q is positive, so the
  // sign-split form avoids the 0^negative * 0 indeterminate when p-2-q < 0.
  const double coeff = (params.p - 1.0) / (params.p - 1.0 - params.q);
  return coeff * detail::signed_pow_abs(z, params.p - 1.0 - params.q);
}

double p_laplace_residual_radial(double r, double mu, double zeta,
                                 const ProblemParams& params) {
  if (!(r > 0.0 && r < 1.0))
    throw std::domain_error("radial operator needs r in (0,1); got r = " +
                            std::to_string(r));
  const double N = static_cast<double>(params.dim);
  const double amu_pm2 = detail::pow_abs(mu, params.p - 2.0);
  return -(params.p - 1.0) * amu_pm2 * zeta - (N - 1.0) / r * amu_pm2 * mu;
}

double stationary_residual_radial(double r, double mu, double zeta,
                                  const ProblemParams& params) {
  return p_laplace_residual_radial(r, mu, zeta, params) -
         detail::pow_abs(mu, params.q);
}

namespace detail {

double pow_abs(double x, double e) {
  if (e == 0.0) return 1.0;
  const double a = std::abs(x);
  if (a == 0.0) return 0.0;
  return pow_pos(a, e);
}

double signed_pow_abs(double x, double e) {
  if (x == 0.0) return 0.0;
  const double m = pow_pos(std::abs(x), e);
  return x > 0.0 ? m : -m;
}

}  // namespace detail
}  // namespace phj
