#include "phj/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "phj/envelopes.hpp"
#include "phj/solver.hpp"
#include "phj/steady.hpp"

namespace phj {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

nlohmann::json check_to_json(const CheckResult& c) {
  return {{"name", c.name},
          {"threshold", c.threshold},
          {"measured", c.measured},
          {"pass", c.pass}};
}

void log_check(std::ostream* log, const CheckResult& c) {
  if (!log) return;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e (threshold %.3e)", c.measured,
                c.threshold);
  *log << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << buf << "\n";
}

}  // namespace

bool all_pass(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

RunArtifacts run_simulation(const RunConfig& config) {
  config.validate_config();

  RunArtifacts art;
  art.config = config;
  const RadialGrid grid{config.cells};
  art.epsilon = config.epsilon.resolve(grid);

  const RegularizedCoefficients coeffs(config.params, art.epsilon);
  const RadialField u0 =
      make_initial(config.initial, grid, config.params, config.tol.quad_tol);

  SolverOptions opts;
  opts.stepper = config.stepper;
  opts.cfl = config.tol.cfl;
  opts.blow_up_factor = config.tol.blow_up_factor;
  art.trajectory =
      solve(u0, coeffs, config.horizon, config.output_times(), opts);

  ReportOptions ropts;
  ropts.tail_fraction = config.tol.tail_fraction;
  ropts.conv_tol = config.tol.conv_tol;
  ropts.quad_tol = config.tol.quad_tol;
  ropts.theta_tol = config.tol.theta_tol;
  const DerivedConstants consts = derive_constants(config.params);
  art.report = convergence_report(art.trajectory, config.params, consts, ropts);

  // Trajectory invariants, measured against the a priori objects.
  const Trajectory& traj = art.trajectory;
  const double sup0 = u0.sup_norm();
  const double lip0 = std::max(std::abs(u0.max_forward_diff()),
                               std::abs(u0.min_forward_diff()));
  const double a0_bound = a_priori_A0(sup0, lip0, config.params);
  const double w0_env = 2.0 * lip0;
  const GradientEnvelope envelope(config.params, w0_env, 0.0);

  double mono_slack = 0.0;
  for (std::size_t k = 0; k + 1 < traj.sup_norms.size(); ++k)
    mono_slack = std::max(mono_slack, traj.sup_norms[k + 1] - traj.sup_norms[k]);
  double min_val = 0.0, max_val = 0.0, grad_low = 0.0, env_excess = -1e300;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    min_val = std::min(min_val, traj.states[k].min_value());
    max_val = std::max(max_val, traj.sup_norms[k]);
    grad_low = std::min(grad_low, traj.grad_min[k]);
    env_excess = std::max(
        env_excess, traj.grad_max[k] - envelope.value(traj.times[k]));
  }

  art.property_checks.push_back({"sup_norm_non_increasing", 1e-6 * sup0,
                                 mono_slack, mono_slack <= 1e-6 * sup0});
  art.property_checks.push_back(
      {"non_negativity", -1e-12, min_val, min_val >= -1e-12});
  art.property_checks.push_back({"bounded_by_initial_sup", sup0 + art.epsilon,
                                 max_val, max_val <= sup0 + art.epsilon});
  art.property_checks.push_back({"gradient_lower_bound", -(1.05 * a0_bound),
                                 grad_low, grad_low >= -(1.05 * a0_bound)});
  art.property_checks.push_back({"gradient_envelope_domination", 0.05 * w0_env,
                                 env_excess, env_excess <= 0.05 * w0_env});

  art.all_passed = art.report.converged && all_pass(art.property_checks) &&
                   all_pass(art.report.checks);
  return art;
}

void write_run_artifacts(const RunArtifacts& art, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string created = iso_now();

  {
    std::ofstream out(dir + "/config.txt");
    out << serialize_run_config(art.config);
  }
  {
    std::ofstream out(dir + "/trajectory.csv");
    out << "time,r,u\n";
    const Trajectory& traj = art.trajectory;
    for (std::size_t k = 0; k < traj.times.size(); ++k)
      for (int i = 0; i < traj.states[k].grid.nodes(); ++i)
        out << fmt(traj.times[k]) << "," << fmt(traj.states[k].grid.node(i))
            << "," << fmt(traj.states[k].values[i]) << "\n";
  }
  {
    std::ofstream out(dir + "/distances.csv");
    out << "time,distance\n";
    for (std::size_t k = 0; k < art.report.times.size(); ++k)
      out << fmt(art.report.times[k]) << ","
          << fmt(art.report.distance_series[k]) << "\n";
  }

  nlohmann::json summary;
  summary["schema"] = 1;
  summary["metadata"] = {{"created", created}, {"tool", "phj"}};
  summary["problem"] = {{"p", art.config.params.p},
                        {"q", art.config.params.q},
                        {"dim", art.config.params.dim}};
  summary["grid"] = {{"cells", art.config.cells},
                     {"epsilon", art.epsilon}};
  summary["time"] = {{"horizon", art.config.horizon},
                     {"outputs", art.config.outputs},
                     {"stepper", art.config.stepper == TimeStepper::explicit_euler
                                     ? "explicit"
                                     : "semi_implicit"},
                     {"steps_taken", art.trajectory.steps_taken}};
  summary["series"] = {{"times", art.trajectory.times},
                       {"sup_norms", art.trajectory.sup_norms},
                       {"grad_min", art.trajectory.grad_min},
                       {"grad_max", art.trajectory.grad_max}};
  {
    std::ofstream out(dir + "/summary.json");
    out << summary.dump(2) << "\n";
  }

  nlohmann::json report;
  report["schema"] = 1;
  report["metadata"] = {{"created", created}, {"tool", "phj"}};
  report["M_inf_est"] = art.report.M_inf_est;
  report["theta_fit"] = art.report.theta_fit;
  report["degenerate_zero"] = art.report.degenerate_zero;
  report["converged"] = art.report.converged;
  report["all_passed"] = art.all_passed;
  report["note"] =
      "finite-horizon surrogate: the horizon and conv_tol are artifact "
      "choices, not limits of the underlying theory";
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : art.report.checks) checks.push_back(check_to_json(c));
  for (const CheckResult& c : art.property_checks)
    checks.push_back(check_to_json(c));
  report["checks"] = checks;
  {
    std::ofstream out(dir + "/report.json");
    out << report.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------------------
// Invariant suites
// ---------------------------------------------------------------------------

namespace {

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

RunConfig small_run_config(InitialData init, int cells, double horizon,
                           int outputs, double eps) {
  RunConfig cfg;
  cfg.params = {2.0, 0.5, 2};
  cfg.cells = cells;
  cfg.epsilon = EpsilonPolicy::fixed(eps);
  cfg.horizon = horizon;
  cfg.outputs = outputs;
  cfg.initial = init;
  return cfg;
}

/// max over sampled nodes and output-time pairs of |u(x,t1)-u(x,t2)| / (|dt| + |dt|^{1/2}).
double hoelder_constant(const Trajectory& traj) {
  double c = 0.0;
  const int n = traj.states.front().grid.cells;
  for (int i = 0; i <= n; i += std::max(1, n / 8)) {
    for (std::size_t k = 0; k < traj.times.size(); ++k)
      for (std::size_t l = k + 1; l < traj.times.size(); ++l) {
        const double dt = traj.times[l] - traj.times[k];
        const double du =
            std::abs(traj.states[l].values[i] - traj.states[k].values[i]);
        c = std::max(c, du / (dt + std::sqrt(dt)));
      }
  }
  return c;
}

std::vector<CheckResult> suite_steady_family(std::ostream* log) {
  std::vector<CheckResult> out;
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  {  // quadrature vs closed form for the zero-plateau member
    const ProblemParams params{2.0, 0.5, 2};
    const SteadyState ss(params, 0.0, 1e-12);
    const DerivedConstants consts = ss.constants();
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double r = u01(rng);
      const double closed =
          consts.c0 / consts.alpha * (1.0 - std::pow(r, consts.alpha));
      worst = std::max(worst, std::abs(ss.value(r) - closed));
    }
    out.push_back({"steady.oracle_equivalence_theta0", 1e-11, worst,
                   worst <= 1e-11});
    log_check(log, out.back());
  }
  {  // first-integral identity across random admissible parameters
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const ProblemParams params = random_params(rng);
      for (double theta : {0.0, 0.25, 0.5, 0.75}) {
        const SteadyState ss(params, theta, 1e-12);
        for (int j = 0; j < 20; ++j) {
          const double r =
              theta + 1e-3 + u01(rng) * (1.0 - 2e-3 - theta);
          worst = std::max(worst, std::abs(ss.first_integral_residual(r)));
        }
      }
    }
    out.push_back({"steady.first_integral_identity", 1e-8, worst, worst <= 1e-8});
    log_check(log, out.back());
  }
  {  // pointwise stationarity with the closed-form second derivative
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const ProblemParams params = random_params(rng);
      std::uniform_real_distribution<double> utheta(0.0, 0.8);
      const double theta = utheta(rng);
      const SteadyState ss(params, theta, 1e-12);
      for (int j = 0; j < 10; ++j) {
        const double r = theta + 1e-3 + u01(rng) * (1.0 - 2e-3 - theta);
        const double res = stationary_residual_radial(
            r, ss.derivative(r), ss.second_derivative(r), params);
        worst = std::max(worst, std::abs(res));
      }
    }
    out.push_back({"steady.stationarity", 1e-6, worst, worst <= 1e-6});
    log_check(log, out.back());
  }
  {  // strict monotonicity of the max map
    const ProblemParams params{2.0, 0.5, 2};
    double prev = SteadyState(params, 0.0, 1e-12).max_value();
    double min_drop = 1e300;
    for (int k = 1; k <= 100; ++k) {
      const double theta = static_cast<double>(k) / 100.0;
      const double cur = SteadyState(params, theta, 1e-12).max_value();
      min_drop = std::min(min_drop, prev - cur);
      prev = cur;
    }
    out.push_back({"steady.max_map_strictly_decreasing", 0.0, -min_drop,
                   min_drop > 0.0});
    log_check(log, out.back());
  }
  {  // inversion round trip
    const ProblemParams params{2.0, 0.5, 2};
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double theta = u01(rng);
      const double M = SteadyState(params, theta, 1e-12).max_value();
      worst = std::max(worst, std::abs(theta_from_max(params, M) - theta));
    }
    out.push_back({"steady.inversion_round_trip", 1e-8, worst, worst <= 1e-8});
    log_check(log, out.back());

    const DerivedConstants consts = derive_constants(params);
    const bool endpoints = theta_from_max(params, 0.0) == 1.0 &&
                           theta_from_max(params, consts.c0 / consts.alpha) == 0.0;
    out.push_back({"steady.inversion_endpoints_exact", 0.0,
                   endpoints ? 0.0 : 1.0, endpoints});
    log_check(log, out.back());
  }
  return out;
}

std::vector<CheckResult> suite_envelopes(std::ostream* log) {
  std::vector<CheckResult> out;
  {  // closed form at (p,N,W0) = (3,2,1): W(1) = 1/2
    const GradientEnvelope env({3.0, 1.0, 2}, 1.0, 0.0);
    const double v = env.value(1.0);
    out.push_back({"envelopes.closed_form_p3", 0.0, std::abs(v - 0.5),
                   v == 0.5});
    log_check(log, out.back());
  }
  {  // positive, strictly decreasing on a sampled horizon
    double worst = -1e300;
    bool positive = true;
    for (const double eps : {0.0, 1e-3}) {
      for (const ProblemParams params :
           {ProblemParams{2.0, 0.5, 2}, ProblemParams{3.0, 1.0, 3}}) {
        const GradientEnvelope env(params, 2.0, eps);
        double prev = env.value(0.0);
        for (int k = 1; k <= 40; ++k) {
          const double cur = env.value(0.25 * k);
          worst = std::max(worst, cur - prev);
          positive = positive && cur > 0.0;
          prev = cur;
        }
      }
    }
    out.push_back({"envelopes.positive_decreasing", 0.0, worst,
                   positive && worst < 0.0});
    log_check(log, out.back());
  }
  {  // regularized ODE tracks the closed form for small epsilon
    double worst = 0.0;
    for (const ProblemParams params :
         {ProblemParams{2.0, 0.5, 2}, ProblemParams{3.0, 1.0, 2}}) {
      const GradientEnvelope exact(params, 1.0, 0.0);
      const GradientEnvelope reg(params, 1.0, 1e-5);
      for (int k = 0; k <= 20; ++k) {
        const double t = 0.5 * k;
        const double w = exact.value(t);
        if (w < 1e-5 || w > 1e5) continue;
        worst = std::max(worst, std::abs(reg.value(t) - w) / w);
      }
    }
    out.push_back({"envelopes.regularized_matches_limit", 1e-3, worst,
                   worst <= 1e-3});
    log_check(log, out.back());
  }
  {  // barrier stationarity at two scales
    const ProblemParams params{2.0, 0.5, 2};
    double worst = 0.0;
    for (const auto& [lambda, s] :
         std::vector<std::pair<double, double>>{{1.0, 0.5}, {0.5, 0.25}}) {
      const Barrier barrier(params, 0.0, lambda);
      worst = std::max(worst, std::abs(barrier.stationarity_residual(s)));
    }
    out.push_back({"envelopes.barrier_stationarity", 1e-8, worst, worst <= 1e-8});
    log_check(log, out.back());
  }
  {  // A0 formula spot values
    const double v1 = a_priori_A0(0.0, 0.0, {2.0, 0.5, 2});
    const double v2 = a_priori_A0(1.0, 1.0, {3.0, 1.0, 2});
    const double v3 = a_priori_A0(0.0, 0.0, {4.0, 1.0, 2});
    const double worst = std::max(
        {std::abs(v1 - 6.0), std::abs(v2 - 8.0),
         std::abs(v3 - (2.0 + std::sqrt(2.0)))});
    out.push_back({"envelopes.a_priori_A0_values", 1e-12, worst, worst <= 1e-12});
    log_check(log, out.back());
  }
  {  // interior lambda_m makes the barrier sup-norm exactly m
    const ProblemParams params{2.0, 0.5, 2};
    const double m = 0.0064;
    const double lam = barrier_lambda_m(0.0, m, params);
    const Barrier barrier(params, 0.0, lam);
    const double err = std::abs(barrier.sup_norm() - m);
    out.push_back({"envelopes.lambda_m_sup_norm", 1e-10, err,
                   lam < 1.0 && err <= 1e-10});
    log_check(log, out.back());
  }
  return out;
}

std::vector<CheckResult> suite_solver_properties(std::ostream* log) {
  std::vector<CheckResult> out;
  auto absorb = [&](const RunArtifacts& art, const std::string& prefix) {
    for (CheckResult c : art.property_checks) {
      c.name = prefix + "." + c.name;
      out.push_back(c);
      log_check(log, out.back());
    }
  };

  {  // zero data stays identically zero
    RunConfig cfg = small_run_config({InitialData::Kind::zero, 0, 0, 0, 0, 0, {}},
                                     64, 0.5, 9, 1e-6);
    const RunArtifacts art = run_simulation(cfg);
    double worst = 0.0;
    for (const RadialField& s : art.trajectory.states)
      worst = std::max(worst, s.sup_norm());
    out.push_back({"solver.zero_data_trivial", 0.0, worst, worst == 0.0});
    log_check(log, out.back());
  }
  {  // parabolic and bump invariants
    RunConfig para = small_run_config(
        {InitialData::Kind::parabolic, 0, 0.01, 0, 0, 0, {}}, 128, 1.0, 21, 1e-6);
    absorb(run_simulation(para), "solver.parabolic");
    RunConfig bump = small_run_config(
        {InitialData::Kind::bump, 0, 0, 0.5, 0.3, 0.01, {}}, 128, 1.0, 21, 1e-6);
    absorb(run_simulation(bump), "solver.bump");
  }
  {  // steady data stays put (relative to its own sup norm)
    RunConfig cfg = small_run_config(
        {InitialData::Kind::steady, 0.3, 0, 0, 0, 0, {}}, 128, 0.5, 9, 1e-6);
    const RunArtifacts art = run_simulation(cfg);
    const RadialField& w = art.trajectory.states.front();
    double worst = 0.0;
    for (const RadialField& s : art.trajectory.states)
      for (int i = 0; i < w.grid.nodes(); ++i)
        worst = std::max(worst, std::abs(s.values[i] - w.values[i]));
    const double rel = worst / w.sup_norm();
    out.push_back({"solver.steady_state_drift_rel", 5e-3, rel, rel <= 5e-3});
    log_check(log, out.back());
  }
  {  // time regularity: refined-grid constant within 2x of the coarse one
    RunConfig coarse = small_run_config(
        {InitialData::Kind::parabolic, 0, 0.01, 0, 0, 0, {}}, 64, 1.0, 21, 1e-6);
    RunConfig fine = coarse;
    fine.cells = 128;
    const double c_coarse = hoelder_constant(run_simulation(coarse).trajectory);
    const double c_fine = hoelder_constant(run_simulation(fine).trajectory);
    out.push_back({"solver.hoelder_constant_stable", 2.0 * c_coarse, c_fine,
                   c_fine <= 2.0 * c_coarse});
    log_check(log, out.back());
  }
  {  // comparison ordering for nodewise-ordered data
    RunConfig big = small_run_config(
        {InitialData::Kind::parabolic, 0, 0.01, 0, 0, 0, {}}, 128, 1.0, 21, 1e-6);
    RunConfig small = big;
    small.initial.amplitude = 0.5 * big.initial.amplitude;
    const Trajectory ta = run_simulation(small).trajectory;
    const Trajectory tb = run_simulation(big).trajectory;
    double worst = -1e300;
    for (std::size_t k = 0; k < ta.states.size(); ++k)
      for (int i = 0; i < ta.states[k].grid.nodes(); ++i)
        worst = std::max(worst, ta.states[k].values[i] - tb.states[k].values[i]);
    out.push_back({"solver.comparison_ordering", 1e-6, worst, worst <= 1e-6});
    log_check(log, out.back());
  }
  {  // grid ladder at fixed epsilon: inter-grid distance contracts
    const double eps = 1e-4;
    std::vector<RadialField> finals;
    for (int n : {64, 128, 256}) {
      RunConfig cfg = small_run_config(
          {InitialData::Kind::parabolic, 0, 0.01, 0, 0, 0, {}}, n, 0.5, 9, eps);
      finals.push_back(run_simulation(cfg).trajectory.states.back());
    }
    auto dist = [](const RadialField& coarse, const RadialField& fine) {
      double d = 0.0;
      for (int i = 0; i < coarse.grid.nodes(); ++i)
        d = std::max(d, std::abs(coarse.values[i] - fine.values[2 * i]));
      return d;
    };
    const double d1 = dist(finals[0], finals[1]);
    const double d2 = dist(finals[1], finals[2]);
    const double ratio = d2 / d1;
    out.push_back({"solver.grid_convergence_ratio", 0.7, ratio, ratio <= 0.7});
    log_check(log, out.back());
  }
  return out;
}

std::vector<CheckResult> suite_convergence(std::ostream* log) {
  std::vector<CheckResult> out;
  // The headline long-time run: parabolic data on the fine grid, horizon 2T
  // with the fit compared between T and 2T.
  RunConfig cfg = small_run_config(
      {InitialData::Kind::parabolic, 0, 0.01, 0, 0, 0, {}}, 512, 12.0, 49, 1e-6);
  const RunArtifacts art = run_simulation(cfg);
  const Trajectory& traj = art.trajectory;
  const DerivedConstants consts = derive_constants(cfg.params);

  // Fit at the half horizon from the truncated trajectory.
  Trajectory half;
  const std::size_t half_count = (traj.times.size() + 1) / 2;  // [0, T]
  half.times.assign(traj.times.begin(), traj.times.begin() + half_count);
  half.states.assign(traj.states.begin(), traj.states.begin() + half_count);
  half.sup_norms.assign(traj.sup_norms.begin(),
                        traj.sup_norms.begin() + half_count);
  half.grad_min.assign(traj.grad_min.begin(), traj.grad_min.begin() + half_count);
  half.grad_max.assign(traj.grad_max.begin(), traj.grad_max.begin() + half_count);
  const ConvergenceReport report_half =
      convergence_report(half, cfg.params, consts, 0.25);
  const ConvergenceReport& report_full = art.report;

  const double theta_gap =
      std::abs(report_half.theta_fit - report_full.theta_fit);
  out.push_back({"convergence.theta_fit_horizon_agreement", 0.02, theta_gap,
                 theta_gap <= 0.02});
  log_check(log, out.back());

  const double final_rel_budget = 0.1 * report_full.M_inf_est;
  const double final_distance = report_full.distance_series.back();
  out.push_back({"convergence.final_distance_rel", final_rel_budget,
                 final_distance, final_distance <= final_rel_budget});
  log_check(log, out.back());

  for (const CheckResult& c : report_full.checks) {
    CheckResult copy = c;
    copy.name = "convergence." + copy.name;
    out.push_back(copy);
    log_check(log, out.back());
  }
  for (const CheckResult& c : art.property_checks) {
    CheckResult copy = c;
    copy.name = "convergence." + copy.name;
    out.push_back(copy);
    log_check(log, out.back());
  }

  {  // late-time first-integral flattening (variance over the sampling window)
    const double theta = report_full.theta_fit;
    std::vector<double> variances;
    for (std::size_t k = traj.times.size() / 2; k < traj.times.size(); ++k) {
      const ProfileDiagnostics diag =
          profile_diagnostics(traj.states[k], cfg.params, consts);
      const RadialGrid& grid = traj.states[k].grid;
      double sum = 0.0, sum2 = 0.0;
      int count = 0;
      for (int i = 0; i <= grid.cells; ++i) {
        const double r = grid.node(i);
        if (r <= theta + 0.1 || r >= 0.9) continue;
        sum += diag.first_integral[i];
        sum2 += diag.first_integral[i] * diag.first_integral[i];
        ++count;
      }
      const double mean = sum / count;
      variances.push_back(std::max(0.0, sum2 / count - mean * mean));
    }
    double worst = -1e300;
    for (std::size_t k = 0; k + 1 < variances.size(); ++k)
      worst = std::max(worst,
                       variances[k + 1] - (1.05 * variances[k] + 1e-24));
    const bool overall = variances.back() <= variances.front();
    out.push_back({"convergence.first_integral_variance_decreasing", 0.0,
                   worst, overall && worst <= 0.0});
    log_check(log, out.back());
  }
  {  // the sup-norm plateau clears the barrier floor
    const double m = 0.0064;  // min of the parabolic data on the ball r <= 0.6
    const double lam = barrier_lambda_m(0.0, m, cfg.params);
    const Barrier barrier(cfg.params, 0.0, lam);
    const double floor = 0.995 * barrier.sup_norm();
    out.push_back({"convergence.M_inf_above_barrier", floor,
                   report_full.M_inf_est, report_full.M_inf_est >= floor});
    log_check(log, out.back());
  }
  return out;
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& name, std::ostream* log) {
  if (name == "steady-family") return suite_steady_family(log);
  if (name == "envelopes") return suite_envelopes(log);
  if (name == "solver-properties") return suite_solver_properties(log);
  if (name == "convergence") return suite_convergence(log);
  throw std::invalid_argument(
      "unknown suite '" + name +
      "' (expected steady-family, envelopes, solver-properties, convergence)");
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const std::string& out_dir,
                                int jobs, std::ostream* log) {
  auto expanded = expand_sweep(spec);
  std::vector<SweepRow> rows(expanded.size());
  std::mutex log_mutex;
  std::size_t next = 0;
  std::mutex next_mutex;

  auto worker = [&]() {
    while (true) {
      std::size_t idx;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= expanded.size()) return;
        idx = next++;
      }
      const auto& [label, cfg_in] = expanded[idx];
      RunConfig cfg = cfg_in;
      cfg.out_dir = out_dir + "/" + label;
      SweepRow row;
      row.label = label;
      row.config = cfg;
      try {
        const RunArtifacts art = run_simulation(cfg);
        write_run_artifacts(art, cfg.out_dir);
        row.ok = art.all_passed;
        row.epsilon = art.epsilon;
        row.theta_fit = art.report.theta_fit;
        row.M_inf_est = art.report.M_inf_est;
        row.final_distance = art.report.distance_series.back();
        row.converged = art.report.converged;
        for (const CheckResult& c : art.property_checks) {
          if (c.name == "sup_norm_non_increasing") row.sup_mono_slack = c.measured;
          if (c.name == "non_negativity") row.min_value = c.measured;
        }
      } catch (const std::exception& err) {
        row.ok = false;
        row.error = err.what();
      }
      if (log) {
        std::lock_guard<std::mutex> lock(log_mutex);
        *log << (row.ok ? "[ok]   " : "[fail] ") << label
             << (row.error.empty() ? "" : ": " + row.error) << "\n";
      }
      rows[idx] = std::move(row);
    }
  };

  const int width =
      std::max(1, std::min(jobs, static_cast<int>(expanded.size())));
  std::vector<std::thread> pool;
  pool.reserve(width);
  for (int k = 0; k < width; ++k) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return rows;  // expanded is label-sorted already
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  out << "label,p,q,dim,cells,epsilon,theta_fit,M_inf_est,final_distance,"
         "converged,sup_mono_slack,min_value,ok,error\n";
  for (const SweepRow& row : rows) {
    std::string error = row.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out << row.label << "," << fmt(row.config.params.p) << ","
        << fmt(row.config.params.q) << "," << row.config.params.dim << ","
        << row.config.cells << "," << fmt(row.epsilon) << ","
        << fmt(row.theta_fit) << "," << fmt(row.M_inf_est) << ","
        << fmt(row.final_distance) << "," << (row.converged ? 1 : 0) << ","
        << fmt(row.sup_mono_slack) << "," << fmt(row.min_value) << ","
        << (row.ok ? 1 : 0) << "," << error << "\n";
  }
}

std::string steady_table_csv(const ProblemParams& params, double theta,
                             int samples, double quad_tol) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  const SteadyState ss(params, theta, quad_tol);
  std::ostringstream out;
  out << "r,w,dw,first_integral_residual\n";
  for (int k = 0; k < samples; ++k) {
    const double r = static_cast<double>(k) / (samples - 1);
    const double residual =
        (r > theta && r < 1.0) ? ss.first_integral_residual(r) : 0.0;
    out << fmt(r) << "," << fmt(ss.value(r)) << "," << fmt(ss.derivative(r))
        << "," << fmt(residual) << "\n";
  }
  return out.str();
}

}  // namespace phj
