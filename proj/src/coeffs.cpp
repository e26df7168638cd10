#include "phj/coeffs.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace phj {

RegularizedCoefficients::RegularizedCoefficients(const ProblemParams& params,
                                                 double epsilon)
    : params_(params), epsilon_(epsilon) {
  validate(params);
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0,1); got " +
                                std::to_string(epsilon));
  eps_sq_ = epsilon * epsilon;
  eps_q_ = std::pow(epsilon, params.q);
  xi_cap_ = 1.0 / epsilon;
  a_exp_ = (params.p - 2.0) / 2.0;
  b_exp_ = params.q / 2.0;
}

double RegularizedCoefficients::clamp_xi(double xi) const {
  if (xi < 0.0)
    throw std::domain_error("squared gradient must be non-negative; got " +
                            std::to_string(xi));
  return xi > xi_cap_ ? xi_cap_ : xi;
}

double RegularizedCoefficients::a(double xi) const {
  return detail::pow_pos(eps_sq_ + clamp_xi(xi), a_exp_);
}

double RegularizedCoefficients::b(double xi) const {
  return detail::pow_pos(eps_sq_ + clamp_xi(xi), b_exp_) - eps_q_;
}

double RegularizedCoefficients::source_speed(double g) const {
  const double xi = g * g;
  if (xi > xi_cap_) return 0.0;  // frozen plateau
  return params_.q * std::abs(g) *
         detail::pow_pos(eps_sq_ + xi, b_exp_ - 1.0);
}

}  // namespace phj
