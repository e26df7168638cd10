#include "phj/steady.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "phj/quadrature.hpp"

namespace phj {

SteadyState::SteadyState(const ProblemParams& params, double theta, double quad_tol)
    : params_(params), consts_(derive_constants(params)), theta_(theta),
      quad_tol_(quad_tol), slope_exp_(1.0 / (params.p - 1.0 - params.q)),
      max_value_(0.0) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::domain_error("theta must lie in [0,1]; got " + std::to_string(theta));
  if (!(quad_tol > 0.0))
    throw std::invalid_argument("quad_tol must be positive");
  max_value_ = value(0.0);
}

double SteadyState::grading_term(double rho) const {
  // theta^beta rho^{-(beta-1)} via exp/log; the theta = 0 branch short-circuits
  // so no 0^beta underflow path is taken.
  if (theta_ == 0.0) return 0.0;
  return std::exp(consts_.beta * std::log(theta_) -
                  (consts_.beta - 1.0) * std::log(rho));
}

double SteadyState::integrand(double rho) const {
  const double g = rho - grading_term(rho);
  if (g <= 0.0) return 0.0;  // only at rho = theta (or roundoff below it)
  return detail::pow_pos(g, slope_exp_);
}

double SteadyState::value(double r) const {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::domain_error("steady-state evaluation needs r in [0,1]; got " +
                            std::to_string(r));
  const double lo = std::max(r, theta_);
  if (lo >= 1.0) return 0.0;
  const auto f = [this](double rho) { return integrand(rho); };

  if (theta_ > 0.0 && lo <= theta_ * (1.0 + 1e-14)) {
    // Lower endpoint sits on the plateau edge where the integrand behaves like
    // (beta (rho-theta))^{1/(p-1-q)} with unbounded slope when p-1-q > 1.
    // Dyadically graded panels at theta + (1-theta) 2^{-k} keep each panel smooth.
    const double len = 1.0 - theta_;
    double total = 0.0;
    double hi = 1.0;
    double frac = 0.5;
    const double panel_tol = quad_tol_ / 64.0;
    for (int k = 0; k < 54 && len * frac > 1e-16; ++k, frac *= 0.5) {
      const double cut = theta_ + len * frac;
      total += detail::integrate(f, cut, hi, panel_tol);
      hi = cut;
    }
    double stub_err = 0.0;
    total += detail::gk15_panel(f, theta_, hi, stub_err);
    return consts_.c0 * total;
  }
  return consts_.c0 * detail::integrate(f, lo, 1.0, quad_tol_);
}

double SteadyState::derivative(double r) const {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::domain_error("steady-state derivative needs r in [0,1]; got " +
                            std::to_string(r));
  if (r <= theta_) return 0.0;
  return -consts_.c0 * integrand(r);
}

double SteadyState::second_derivative(double r) const {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::domain_error("steady-state second derivative needs r in [0,1]; got " +
                            std::to_string(r));
  if (r <= theta_) return 0.0;
  const double g = r - grading_term(r);
  if (g <= 0.0) return 0.0;
  // d/dr [r - theta^beta r^{1-beta}] = 1 + (beta-1) theta^beta r^{-beta}
  double gp = 1.0;
  if (theta_ > 0.0)
    gp += (consts_.beta - 1.0) *
          std::exp(consts_.beta * (std::log(theta_) - std::log(r)));
  return -consts_.c0 * slope_exp_ * detail::pow_pos(g, slope_exp_ - 1.0) * gp;
}

double SteadyState::first_integral_residual(double r) const {
  if (!(r > theta_ && r < 1.0))
    throw std::domain_error(
        "first-integral identity holds on (theta,1) only; got r = " +
        std::to_string(r) + " with theta = " + std::to_string(theta_));
  const double beta = consts_.beta;
  const double gamma = std::pow(theta_, beta) / beta;
  return std::pow(r, beta - 1.0) * chi(derivative(r), params_) +
         std::pow(r, beta) / beta - gamma;
}

double theta_from_max(const ProblemParams& params, double M, double theta_tol,
                      double quad_tol) {
  const DerivedConstants consts = derive_constants(params);
  const double top = consts.c0 / consts.alpha;  // ||w_0||_inf, the family maximum
  if (M < 0.0)
    throw std::domain_error("no steady state attains a negative maximum (M = " +
                            std::to_string(M) + ")");
  if (M > top * (1.0 + 1e-12))
    throw std::domain_error("no steady state attains M = " + std::to_string(M) +
                            "; the family maximum is c0/alpha = " +
                            std::to_string(top));
  if (M == 0.0) return 1.0;
  if (M >= top) return 0.0;

  double lo = 0.0, hi = 1.0;  // max_value is decreasing: value(lo) >= M >= value(hi)
  for (int it = 0; it < 60 && (hi - lo) > theta_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double val = SteadyState(params, mid, quad_tol).max_value();
    if (val > M)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace phj
