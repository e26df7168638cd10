// Acceptance suite: one pass/fail line per criterion, exit code = failure count.
//
// Each criterion pins its tolerances here, in code. Solver-backed criteria use
// the explicit-Euler stepper. Where a criterion does not fix the regularization
// parameter, runs use a fixed eps = 1e-6 (small enough that the O(eps^q) offset
// of the regularized source sits far below every threshold; see criterion 4's
// [info] lines for the measured effect of larger eps).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "phj/diagnostics.hpp"
#include "phj/envelopes.hpp"
#include "phj/initial.hpp"
#include "phj/solver.hpp"
#include "phj/steady.hpp"

using namespace phj;

namespace {

int failures = 0;

void record(const std::string& name, bool pass, const std::string& qoi = "") {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
  if (!qoi.empty()) std::cout << "  " << qoi;
  std::cout << "\n";
  std::cout.flush();
  if (!pass) ++failures;
}

void info(const std::string& text) { std::cout << "[info] " << text << "\n"; }

std::string qoi(double value, double threshold) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "(val=%.3e, thr=%.3e)", value, threshold);
  return buf;
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<double> uniform_times(double t_end, int count) {
  std::vector<double> times(count);
  for (int k = 0; k < count; ++k) times[k] = t_end * k / (count - 1);
  times.back() = t_end;
  return times;
}

RadialField sample_steady(const ProblemParams& params, double theta,
                          const RadialGrid& grid) {
  const SteadyState ss(params, theta);
  RadialField f = make_field(grid);
  for (int i = 0; i <= grid.cells; ++i) f.values[i] = ss.value(grid.node(i));
  f.values[grid.cells] = 0.0;
  return f;
}

RadialField parabolic(double amplitude, const RadialGrid& grid) {
  InitialData init;
  init.kind = InitialData::Kind::parabolic;
  init.amplitude = amplitude;
  return make_initial(init, grid, {2.0, 0.5, 2});
}

double max_distance(const Trajectory& traj, const RadialField& ref) {
  double d = 0.0;
  for (const RadialField& s : traj.states)
    for (int i = 0; i < ref.grid.nodes(); ++i)
      d = std::max(d, std::abs(s.values[i] - ref.values[i]));
  return d;
}

ProblemParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> up(2.0, 4.5);
  std::uniform_real_distribution<double> ufrac(0.1, 0.9);
  std::uniform_int_distribution<int> udim(2, 5);
  ProblemParams params;
  params.p = up(rng);
  params.q = ufrac(rng) * (params.p - 1.0);
  params.dim = udim(rng);
  return params;
}

// --------------------------------------------------------------------------

void criterion_1_steady_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const ProblemParams params{2.0, 0.5, 2};
  const SteadyState ss(params, 0.0, 1e-12);
  const DerivedConstants c = ss.constants();
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double r = ur(rng);
    const double closed = c.c0 / c.alpha * (1.0 - std::pow(r, c.alpha));
    worst = std::max(worst, std::abs(ss.value(r) - closed));
  }
  const double secs = elapsed_s(t0);
  record("criterion 1: quadrature w_0 matches closed form (<= 1e-10)",
         worst <= 1e-10 && secs < 1.0,
         qoi(worst, 1e-10) + " runtime " + std::to_string(secs) + "s");
}

void criterion_2_first_integral() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(202);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const ProblemParams params = random_params(rng);
    for (const double theta : {0.0, 0.25, 0.5, 0.75}) {
      const SteadyState ss(params, theta, 1e-12);
      for (int j = 0; j < 20; ++j) {
        const double r = theta + 1e-3 + u01(rng) * (1.0 - 2e-3 - theta);
        worst = std::max(worst, std::abs(ss.first_integral_residual(r)));
      }
    }
  }
  const double secs = elapsed_s(t0);
  record("criterion 2: first-integral identity (<= 1e-8, 50 random params)",
         worst <= 1e-8 && secs < 10.0,
         qoi(worst, 1e-8) + " runtime " + std::to_string(secs) + "s");
}

void criterion_3_max_map_inversion() {
  const ProblemParams params{2.0, 0.5, 2};
  const DerivedConstants c = derive_constants(params);
  std::mt19937 rng(303);
  std::uniform_real_distribution<double> ut(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double theta = ut(rng);
    const double M = SteadyState(params, theta, 1e-12).max_value();
    worst = std::max(worst, std::abs(theta_from_max(params, M) - theta));
  }
  const bool endpoints =
      theta_from_max(params, 0.0) == 1.0 &&
      theta_from_max(params, c.c0 / c.alpha) == 0.0;
  record("criterion 3: max-map inversion round trip (<= 1e-8) and exact endpoints",
         worst <= 1e-8 && endpoints, qoi(worst, 1e-8));
}

void criterion_4_solver_stationarity() {
  const ProblemParams params{2.0, 0.5, 2};
  // As specified: eps = h^{1/2} tied to each grid.
  double dist[2] = {0.0, 0.0};
  double norm_w = 0.0;
  const int grids[2] = {256, 512};
  for (int g = 0; g < 2; ++g) {
    const RadialGrid grid{grids[g]};
    const RadialField w = sample_steady(params, 0.3, grid);
    norm_w = w.sup_norm();
    const double eps = EpsilonPolicy::sqrt_h().resolve(grid);
    const RegularizedCoefficients coeffs(params, eps);
    const Trajectory traj = solve(w, coeffs, 5.0, uniform_times(5.0, 21));
    dist[g] = max_distance(traj, w);
  }
  const double tol = 5e-3 * norm_w;
  const double ratio = dist[1] / dist[0];
  record("criterion 4: stationarity of w_0.3 under the solver, eps = h^{1/2} "
         "(<= 5e-3 rel)",
         dist[1] <= tol, qoi(dist[1], tol));
  record("criterion 4: refinement ratio n=256 -> n=512 (<= 0.7)", ratio <= 0.7,
         qoi(ratio, 0.7));
  info("the two lines above run the criterion exactly as stated; the "
       "regularized source sits below |grad u|^q by ~eps^q = " +
       std::to_string(std::pow(EpsilonPolicy::sqrt_h().resolve(RadialGrid{512}),
                               0.5)) +
       ", so the profile drains toward zero regardless of the grid");

  // Same setup at fixed eps = 1e-6: the solver itself holds the tolerance.
  for (int g = 0; g < 2; ++g) {
    const RadialGrid grid{grids[g]};
    const RadialField w = sample_steady(params, 0.3, grid);
    const RegularizedCoefficients coeffs(params, 1e-6);
    const Trajectory traj = solve(w, coeffs, 5.0, uniform_times(5.0, 21));
    const double d = max_distance(traj, w);
    info("stationarity at eps=1e-6, n=" + std::to_string(grids[g]) +
         ": max sup-distance " + std::to_string(d) + " vs tol " +
         std::to_string(tol) + (d <= tol ? " (within)" : " (outside)"));
  }
}

void criterion_5_monotone_bounds() {
  const ProblemParams params{2.0, 0.5, 2};
  const RadialGrid grid{256};
  const double eps = 1e-6;
  const RegularizedCoefficients coeffs(params, eps);

  InitialData bump_init;
  bump_init.kind = InitialData::Kind::bump;
  bump_init.center = 0.5;
  bump_init.width = 0.3;
  bump_init.height = 0.01;

  bool all_ok = true;
  double worst_mono = -1e300, worst_min = 0.0, worst_bound = -1e300,
         worst_env = -1e300;
  for (const RadialField& u0 :
       {parabolic(0.01, grid), make_initial(bump_init, grid, params)}) {
    const Trajectory traj = solve(u0, coeffs, 2.0, uniform_times(2.0, 33));
    const double sup0 = u0.sup_norm();
    const double w0 = 2.0 * std::max(std::abs(u0.max_forward_diff()),
                                     std::abs(u0.min_forward_diff()));
    const GradientEnvelope envelope(params, w0, 0.0);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      if (k + 1 < traj.times.size())
        worst_mono = std::max(
            worst_mono, (traj.sup_norms[k + 1] - traj.sup_norms[k]) - 1e-6 * sup0);
      worst_min = std::min(worst_min, traj.states[k].min_value());
      worst_bound =
          std::max(worst_bound, traj.sup_norms[k] - (sup0 + eps));
      worst_env = std::max(worst_env, traj.grad_max[k] -
                                          (envelope.value(traj.times[k]) +
                                           0.05 * w0));
    }
  }
  all_ok = worst_mono <= 0.0 && worst_min >= -1e-12 && worst_bound <= 0.0 &&
           worst_env <= 0.0;
  record("criterion 5: sup-norm monotone, values in [-1e-12, ||u0||+eps], "
         "grad <= W(t)+0.05 W0 (parabolic + bump)",
         all_ok,
         qoi(worst_mono, 0.0) + " min=" + std::to_string(worst_min) +
             " bound_excess=" + std::to_string(worst_bound) +
             " env_excess=" + std::to_string(worst_env));
}

void criterion_6_envelope_closed_form() {
  const GradientEnvelope exact({3.0, 1.0, 2}, 1.0, 0.0);
  const bool exact_half = exact.value(1.0) == 0.5;
  const GradientEnvelope reg({3.0, 1.0, 2}, 1.0, 1e-5);
  double worst = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double t = 0.1 * k;
    const double w = exact.value(t);
    worst = std::max(worst, std::abs(reg.value(t) - w) / w);
  }
  record("criterion 6: W(1) = 1/2 exactly and W_eps within 1e-3 relative on [0,10]",
         exact_half && worst <= 1e-3, qoi(worst, 1e-3));
}

void criterion_7_barrier_floor() {
  const ProblemParams params{2.0, 0.5, 2};
  const RadialGrid grid{256};
  const RadialField u0 = parabolic(0.01, grid);
  // m = min of u0 over the ball r <= 0.6 (where it is positive).
  const double rho = 0.6;
  const double m = 0.01 * (1.0 - rho * rho);
  const double lam = barrier_lambda_m(0.0, m, params);
  const Barrier barrier(params, 0.0, lam);

  // construction validity: the barrier ball sits inside {u0 >= m} and u0
  // dominates the barrier nodewise on it
  bool dominated = lam <= rho;
  for (int i = 0; i <= grid.cells && dominated; ++i) {
    const double r = grid.node(i);
    if (r > lam) break;
    dominated = u0.values[i] >= barrier.value(r) - 1e-15;
  }

  const RegularizedCoefficients coeffs(params, 1e-6);
  const Trajectory traj = solve(u0, coeffs, 8.0, uniform_times(8.0, 33));
  const DerivedConstants consts = derive_constants(params);
  const ConvergenceReport report =
      convergence_report(traj, params, consts, 0.25);
  const double floor = barrier.sup_norm() * (1.0 - 5e-3);
  record("criterion 7: M_inf_est >= (1 - 5e-3) ||v_lambda_m|| with u0 >= v",
         dominated && report.M_inf_est >= floor,
         qoi(report.M_inf_est, floor));
}

void criterion_8_headline_convergence() {
  const ProblemParams params{2.0, 0.5, 2};
  const DerivedConstants consts = derive_constants(params);
  const RadialGrid grid{512};
  const RadialField u0 = parabolic(0.01, grid);
  const RegularizedCoefficients coeffs(params, 1e-6);
  const double horizon = 6.0;  // frozen by the refinement study; run to 2T
  const Trajectory traj =
      solve(u0, coeffs, 2.0 * horizon, uniform_times(2.0 * horizon, 49));

  Trajectory half;
  const std::size_t half_count = 25;  // times 0 .. 6.0
  half.times.assign(traj.times.begin(), traj.times.begin() + half_count);
  half.states.assign(traj.states.begin(), traj.states.begin() + half_count);
  half.sup_norms.assign(traj.sup_norms.begin(),
                        traj.sup_norms.begin() + half_count);
  half.grad_min.assign(traj.grad_min.begin(),
                       traj.grad_min.begin() + half_count);
  half.grad_max.assign(traj.grad_max.begin(),
                       traj.grad_max.begin() + half_count);

  const ConvergenceReport at_T = convergence_report(half, params, consts, 0.25);
  const ConvergenceReport at_2T = convergence_report(traj, params, consts, 0.25);

  // tail monotonicity with 10% slack over the final quarter
  const std::size_t tail_begin = traj.times.size() - traj.times.size() / 4;
  bool tail_mono = true;
  for (std::size_t k = tail_begin; k + 1 < traj.times.size(); ++k)
    if (at_2T.distance_series[k + 1] >
        1.10 * at_2T.distance_series[k] + 1e-14)
      tail_mono = false;

  const double final_distance = at_2T.distance_series.back();
  const double budget = 0.1 * at_2T.M_inf_est;
  const double theta_gap = std::abs(at_T.theta_fit - at_2T.theta_fit);

  record("criterion 8: headline convergence, final distance <= 0.1 M_inf",
         final_distance <= budget, qoi(final_distance, budget));
  record("criterion 8: distance tail non-increasing (10% slack)", tail_mono,
         "");
  record("criterion 8: theta_fit agreement between horizons T and 2T (<= 0.02)",
         theta_gap <= 0.02,
         qoi(theta_gap, 0.02) + " theta=" + std::to_string(at_2T.theta_fit));
}

void criterion_9_comparison() {
  const ProblemParams params{2.0, 0.5, 2};
  const RadialGrid grid{256};
  const RadialField ub = parabolic(0.01, grid);
  RadialField ua = ub;
  for (double& v : ua.values) v *= 0.5;
  const RegularizedCoefficients coeffs(params, 1e-6);
  const Trajectory ta = solve(ua, coeffs, 4.0, uniform_times(4.0, 17));
  const Trajectory tb = solve(ub, coeffs, 4.0, uniform_times(4.0, 17));
  double worst = -1e300;
  for (std::size_t k = 0; k < ta.states.size(); ++k)
    for (int i = 0; i < grid.nodes(); ++i)
      worst = std::max(worst, ta.states[k].values[i] - tb.states[k].values[i]);
  record("criterion 9: comparison ordering u_a <= u_b + 1e-6 (u0_a = u0_b / 2)",
         worst <= 1e-6, qoi(worst, 1e-6));
}

void criterion_10_negative_controls() {
  const ProblemParams params{2.0, 0.5, 2};
  const DerivedConstants consts = derive_constants(params);
  const RadialGrid grid{256};

  RadialField hump = make_field(grid);
  for (int i = 0; i <= grid.cells; ++i) {
    const double r = grid.node(i);
    hump.values[i] = r * (1.0 - r);
  }
  const bool scaled_fails =
      !check_scaled_derivative_monotone(
           profile_diagnostics(hump, params, consts), 1e-6)
           .pass;

  RadialField ramp = make_field(grid);
  for (int i = 0; i <= grid.cells; ++i) ramp.values[i] = grid.node(i);
  const bool flux_fails =
      !check_flux_monotone(profile_diagnostics(ramp, params, consts), 1e-6).pass;

  // positive control alongside, so a vacuous checker cannot pass silently
  const RadialField w = sample_steady(params, 0.3, grid);
  const bool steady_passes =
      check_scaled_derivative_monotone(profile_diagnostics(w, params, consts),
                                       1e-6)
          .pass &&
      check_flux_monotone(profile_diagnostics(w, params, consts), 1e-6).pass;

  record("criterion 10: negative controls rejected, steady profile accepted",
         scaled_fails && flux_fails && steady_passes, "");
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  std::cout << "acceptance suite\n================\n";
  criterion_1_steady_oracle();
  criterion_2_first_integral();
  criterion_3_max_map_inversion();
  criterion_4_solver_stationarity();
  criterion_5_monotone_bounds();
  criterion_6_envelope_closed_form();
  criterion_7_barrier_floor();
  criterion_8_headline_convergence();
  criterion_9_comparison();
  criterion_10_negative_controls();
  std::printf("================\n%d failing line(s), total runtime %.1fs\n",
              failures, elapsed_s(t0));
  return failures;
}
