#include "phj/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phj/steady.hpp"

namespace phj {

ProfileDiagnostics profile_diagnostics(const RadialField& field,
                                       const ProblemParams& params,
                                       const DerivedConstants& consts) {
  const int n = field.grid.cells;
  if (n < 16)
    throw std::invalid_argument("profile diagnostics need at least 16 cells");
  const double h = field.grid.spacing();
  const auto& u = field.values;

  ProfileDiagnostics diag;
  diag.derivative.resize(n + 1);
  diag.scaled_derivative.resize(n + 1);
  diag.first_integral.resize(n + 1);
  diag.flux.resize(n + 1);

  diag.derivative[0] = (u[1] - u[0]) / h;
  diag.derivative[n] = (u[n] - u[n - 1]) / h;
  for (int i = 1; i < n; ++i) diag.derivative[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);

  const double scale_exp = (params.dim - 1.0) / (params.p - 1.0);
  const double beta = consts.beta;
  for (int i = 0; i <= n; ++i) {
    const double r = field.grid.node(i);
    const double du = diag.derivative[i];
    diag.scaled_derivative[i] = detail::pow_abs(r, scale_exp) * du;
    diag.first_integral[i] =
        detail::pow_abs(r, beta - 1.0) * chi(du, params) +
        detail::pow_abs(r, beta) / beta;
    diag.flux[i] = detail::pow_abs(r, params.dim - 1.0) *
                   detail::signed_pow_abs(du, params.p - 1.0);
  }
  return diag;
}

namespace {
MonotoneVerdict non_increasing(const std::vector<double>& a, double tol) {
  MonotoneVerdict v;
  v.max_violation = 0.0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i)
    v.max_violation = std::max(v.max_violation, a[i + 1] - a[i]);
  v.pass = v.max_violation <= tol;
  return v;
}
}  // namespace

MonotoneVerdict check_scaled_derivative_monotone(const ProfileDiagnostics& diag,
                                                 double tol) {
  return non_increasing(diag.scaled_derivative, tol);
}

MonotoneVerdict check_flux_monotone(const ProfileDiagnostics& diag, double tol) {
  return non_increasing(diag.flux, tol);
}

ConvergenceReport convergence_report(const Trajectory& traj,
                                     const ProblemParams& params,
                                     const DerivedConstants& consts,
                                     double tail_fraction) {
  ReportOptions opts;
  opts.tail_fraction = tail_fraction;
  return convergence_report(traj, params, consts, opts);
}

ConvergenceReport convergence_report(const Trajectory& traj,
                                     const ProblemParams& params,
                                     const DerivedConstants& consts,
                                     const ReportOptions& opts) {
  const std::size_t count = traj.times.size();
  if (count < 8)
    throw std::invalid_argument(
        "horizon too short: a convergence report needs at least 8 output times");
  if (!(opts.tail_fraction > 0.0 && opts.tail_fraction <= 0.5))
    throw std::invalid_argument("tail_fraction must lie in (0, 0.5]");

  ConvergenceReport report;
  report.times = traj.times;

  const std::size_t tail_len = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(opts.tail_fraction * count)));
  const std::size_t tail_begin = count - tail_len;
  double tail_sum = 0.0;
  for (std::size_t k = tail_begin; k < count; ++k) tail_sum += traj.sup_norms[k];
  report.M_inf_est = tail_sum / static_cast<double>(tail_len);

  const double family_max = consts.c0 / consts.alpha;
  bool within_family = true;
  if (report.M_inf_est < 1e-10) {
    report.degenerate_zero = true;
    report.theta_fit = 1.0;  // zero steady state; no bisection on the endpoint
    report.distance_series = traj.sup_norms;
  } else {
    double target = report.M_inf_est;
    if (target > family_max) {
      within_family = target <= family_max * (1.0 + 1e-9);
      target = family_max;
    }
    report.theta_fit =
        theta_from_max(params, target, opts.theta_tol, opts.quad_tol);
    const SteadyState fit(params, report.theta_fit, opts.quad_tol);
    const RadialGrid grid = traj.states.front().grid;
    std::vector<double> w(grid.nodes());
    for (int i = 0; i < grid.nodes(); ++i) w[i] = fit.value(grid.node(i));
    report.distance_series.reserve(count);
    for (const RadialField& state : traj.states) {
      double d = 0.0;
      for (int i = 0; i < grid.nodes(); ++i)
        d = std::max(d, std::abs(state.values[i] - w[i]));
      report.distance_series.push_back(d);
    }
  }

  const double final_distance = report.distance_series.back();
  double worst_ratio = 0.0;  // (d_{k+1} - (1+slack) d_k) over the tail, floored
  bool tail_monotone = true;
  for (std::size_t k = tail_begin; k + 1 < count; ++k) {
    const double allowed = (1.0 + opts.mono_slack) * report.distance_series[k] +
                           opts.mono_floor * report.M_inf_est + 1e-14;
    const double excess = report.distance_series[k + 1] - allowed;
    worst_ratio = std::max(worst_ratio, excess);
    if (excess > 0.0) tail_monotone = false;
  }

  report.checks.push_back({"theta_fit_within_family_range", 0.0,
                           report.M_inf_est - family_max, within_family});
  report.checks.push_back(
      {"final_distance", opts.conv_tol, final_distance,
       final_distance <= opts.conv_tol});
  report.checks.push_back({"distance_tail_non_increasing", 0.0, worst_ratio,
                           tail_monotone});
  report.converged = within_family && tail_monotone &&
                     final_distance <= opts.conv_tol;
  return report;
}

}  // namespace phj
