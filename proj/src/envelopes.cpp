#include "phj/envelopes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "phj/coeffs.hpp"

namespace phj {

GradientEnvelope::GradientEnvelope(const ProblemParams& params, double w0,
                                   double epsilon)
    : params_(params), w0_(w0), epsilon_(epsilon) {
  validate(params);
  if (w0 < 0.0) throw std::invalid_argument("W0 must be non-negative");
  if (epsilon < 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("epsilon must lie in [0,1)");
  const double N = static_cast<double>(params.dim);
  const double t_char = params.p > 2.0
                            ? std::pow(w0, 2.0 - params.p) /
                                  ((params.p - 2.0) * (N - 1.0))
                            : 1.0 / (N - 1.0);
  rk_dt_ = 1e-3 * t_char;
}

double GradientEnvelope::value(double t) const {
  if (t < 0.0) throw std::domain_error("envelope time must be non-negative");
  if (w0_ == 0.0) return 0.0;
  const double N = static_cast<double>(params_.dim);
  if (epsilon_ == 0.0) {
    if (params_.p == 2.0) return w0_ * std::exp(-(N - 1.0) * t);
    return std::pow(std::pow(w0_, 2.0 - params_.p) +
                        (params_.p - 2.0) * (N - 1.0) * t,
                    -1.0 / (params_.p - 2.0));
  }
  const RegularizedCoefficients coeffs(params_, epsilon_);
  const auto rate = [&](double w) { return -(N - 1.0) * coeffs.a(w * w) * w; };
  double w = w0_;
  double s = 0.0;
  while (s < t) {
    const double dt = std::min(rk_dt_, t - s);
    const double k1 = rate(w);
    const double k2 = rate(w + 0.5 * dt * k1);
    const double k3 = rate(w + 0.5 * dt * k2);
    const double k4 = rate(w + dt * k3);
    w += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s += dt;
  }
  return w;
}

Barrier::Barrier(const ProblemParams& params, double center_offset, double lambda,
                 double quad_tol)
    : w0_(params, 0.0, quad_tol), center_offset_(center_offset), lambda_(lambda) {
  if (!(center_offset >= 0.0 && center_offset < 1.0))
    throw std::invalid_argument("barrier centre offset must lie in [0,1)");
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("barrier radius lambda must lie in (0,1]");
  if (lambda > 1.0 - center_offset + 1e-15)
    throw std::invalid_argument(
        "barrier ball leaves the domain: lambda > 1 - |x0|");
  scale_ = std::pow(lambda, w0_.constants().alpha);
}

double Barrier::value(double s) const {
  if (!(s >= 0.0 && s <= lambda_))
    throw std::domain_error("barrier distance must lie in [0, lambda]; got " +
                            std::to_string(s));
  return scale_ * w0_.value(s / lambda_);
}

double Barrier::stationarity_residual(double s) const {
  if (!(s > 0.0 && s < lambda_))
    throw std::domain_error(
        "barrier stationarity residual is defined on (0, lambda) only");
  const double alpha = w0_.constants().alpha;
  const double y = s / lambda_;
  const double mu = std::pow(lambda_, alpha - 1.0) * w0_.derivative(y);
  const double zeta = std::pow(lambda_, alpha - 2.0) * w0_.second_derivative(y);
  return stationary_residual_radial(s, mu, zeta, w0_.params());
}

double a_priori_A0(double u0_sup, double u0_lip, const ProblemParams& params) {
  validate(params);
  if (u0_sup < 0.0 || u0_lip < 0.0)
    throw std::invalid_argument("norms must be non-negative");
  return std::pow(2.0, 1.0 / (params.p - 1.0 - params.q)) +
         2.0 * (1.0 + u0_sup + u0_lip);
}

double barrier_lambda_m(double center_offset, double m,
                        const ProblemParams& params) {
  if (!(m > 0.0)) throw std::invalid_argument("lower bound m must be positive");
  if (!(center_offset >= 0.0 && center_offset < 1.0))
    throw std::invalid_argument("centre offset must lie in [0,1)");
  const DerivedConstants consts = derive_constants(params);
  const double exponent = 1.0 / consts.alpha;  // (p-1-q)/(p-q)
  return std::min(1.0 - center_offset,
                  std::pow(m * consts.alpha / consts.c0, exponent));
}

}  // namespace phj
