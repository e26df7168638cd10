#include "phj/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace phj {

double EpsilonPolicy::resolve(const RadialGrid& grid) const {
  const double h = grid.spacing();
  switch (kind) {
    case Kind::explicit_value: return value;
    case Kind::sqrt_h: return std::sqrt(h);
    case Kind::h_squared: return h * h;
  }
  return value;
}

namespace {

struct Workspace {
  int n = 0;
  double h = 0.0;
  double dimension = 0.0;
  std::vector<double> r_pow;      // r_i^{N-1}
  std::vector<double> rhalf_pow;  // r_{i+1/2}^{N-1}
  std::vector<double> grad;       // half-node gradients, size n
  std::vector<double> coef_a;     // a(grad^2) at half nodes
  std::vector<double> source;     // b(centered gradient^2) at nodes
  std::vector<double> rhs;

  explicit Workspace(const RadialGrid& grid, const ProblemParams& params) {
    n = grid.cells;
    h = grid.spacing();
    dimension = static_cast<double>(params.dim);
    r_pow.resize(n + 1);
    rhalf_pow.resize(n);
    for (int i = 0; i <= n; ++i)
      r_pow[i] = std::pow(grid.node(i), dimension - 1.0);
    for (int i = 0; i < n; ++i)
      rhalf_pow[i] = std::pow((i + 0.5) * h, dimension - 1.0);
    grad.resize(n);
    coef_a.resize(n);
    source.assign(n + 1, 0.0);
    rhs.assign(n + 1, 0.0);
  }

  // Fills grad/coef_a/source from u; returns {max half-node xi, max source speed}.
  std::pair<double, double> load(const std::vector<double>& u,
                                 const RegularizedCoefficients& coeffs) {
    double xi_max = 0.0;
    double g_abs_max = 0.0;
    for (int i = 0; i < n; ++i) {
      const double g = (u[i + 1] - u[i]) / h;
      grad[i] = g;
      const double xi = g * g;
      xi_max = std::max(xi_max, xi);
      coef_a[i] = coeffs.a(xi);
    }
    source[0] = 0.0;  // symmetry ghost: centered gradient vanishes at the origin
    for (int i = 1; i < n; ++i) {
      const double gc = (u[i + 1] - u[i - 1]) / (2.0 * h);
      g_abs_max = std::max(g_abs_max, std::abs(gc));
      source[i] = coeffs.b(gc * gc);
    }
    const double c_max = coeffs.source_speed(g_abs_max);
    return {xi_max, c_max};
  }

  // Semi-discrete right-hand side (diffusion flux difference + source).
  void eval_rhs() {
    rhs[0] = 2.0 * dimension / h * coef_a[0] * grad[0];
    for (int i = 1; i < n; ++i) {
      const double flux_e = rhalf_pow[i] * coef_a[i] * grad[i];
      const double flux_w = rhalf_pow[i - 1] * coef_a[i - 1] * grad[i - 1];
      rhs[i] = (flux_e - flux_w) / (r_pow[i] * h) + source[i];
    }
    rhs[n] = 0.0;
  }

  double dt_policy(double xi_max, double c_max,
                   const RegularizedCoefficients& coeffs, double cfl) const {
    const double a_max = coeffs.a(xi_max);  // a is non-decreasing
    double dt = cfl * h * h / (2.0 * dimension * a_max);
    if (c_max > 0.0) {
      const double dt_src = cfl * 4.0 * coeffs.a(0.0) / (c_max * c_max);
      dt = std::min(dt, dt_src);
    }
    return dt;
  }
};

void check_state(const RadialField& state) {
  if (state.grid.cells < 2)
    throw std::invalid_argument("solver needs at least 2 cells");
  if (state.values.size() != static_cast<std::size_t>(state.grid.nodes()))
    throw std::invalid_argument("field size does not match its grid");
  if (state.values.back() != 0.0)
    throw std::invalid_argument(
        "state violates the Dirichlet boundary value: u(1) = " +
        std::to_string(state.values.back()) + " (must be 0)");
}

// Tridiagonal solve (Thomas); diag/upper/lower of size m, solution into x.
void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& x) {
  const std::size_t m = diag.size();
  for (std::size_t i = 1; i < m; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    x[i] -= w * x[i - 1];
  }
  x[m - 1] /= diag[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) x[i] = (x[i] - upper[i] * x[i + 1]) / diag[i];
}

}  // namespace

double stable_dt(const RadialField& state, const RegularizedCoefficients& coeffs,
                 double cfl) {
  check_state(state);
  Workspace ws(state.grid, coeffs.params());
  const auto [xi_max, c_max] = ws.load(state.values, coeffs);
  return ws.dt_policy(xi_max, c_max, coeffs, cfl);
}

RadialField step(const RadialField& state, double dt,
                 const RegularizedCoefficients& coeffs, double cfl) {
  check_state(state);
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  Workspace ws(state.grid, coeffs.params());
  const auto [xi_max, c_max] = ws.load(state.values, coeffs);
  const double dt_stable = ws.dt_policy(xi_max, c_max, coeffs, cfl);
  if (dt > dt_stable * (1.0 + 1e-12))
    throw std::invalid_argument("dt = " + std::to_string(dt) +
                                " violates the stability policy (max " +
                                std::to_string(dt_stable) + ")");
  ws.eval_rhs();
  RadialField out = state;
  for (int i = 0; i < ws.n; ++i) out.values[i] += dt * ws.rhs[i];
  out.values[ws.n] = 0.0;
  return out;
}

Trajectory solve(const RadialField& u0, const RegularizedCoefficients& coeffs,
                 double t_end, const std::vector<double>& output_times,
                 const SolverOptions& opts) {
  check_state(u0);
  if (u0.min_value() < 0.0)
    throw std::invalid_argument("initial data must be non-negative");
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (output_times.empty())
    throw std::invalid_argument("at least one output time is required");
  for (std::size_t k = 0; k < output_times.size(); ++k) {
    if (output_times[k] < 0.0 || output_times[k] > t_end * (1.0 + 1e-12))
      throw std::invalid_argument("output times must lie in [0, t_end]");
    if (k > 0 && output_times[k] <= output_times[k - 1])
      throw std::invalid_argument("output times must be strictly increasing");
  }

  Workspace ws(u0.grid, coeffs.params());
  const int n = ws.n;
  const double blow_up = opts.blow_up_factor * u0.sup_norm() + 1.0;

  Trajectory traj;
  auto record = [&](double t, const std::vector<double>& u) {
    RadialField f{u0.grid, u};
    traj.times.push_back(t);
    traj.sup_norms.push_back(f.sup_norm());
    traj.grad_min.push_back(f.min_forward_diff());
    traj.grad_max.push_back(f.max_forward_diff());
    traj.states.push_back(std::move(f));
  };

  std::vector<double> u = u0.values;
  std::vector<double> lower(n), diag(n), upper(n), rhs_vec(n);
  double t = 0.0;
  std::size_t next_out = 0;
  if (output_times[0] == 0.0) {
    record(0.0, u);
    ++next_out;
  }

  while (next_out < output_times.size()) {
    const double target = output_times[next_out];
    const auto [xi_max, c_max] = ws.load(u, coeffs);
    double dt;
    if (opts.stepper == TimeStepper::explicit_euler) {
      dt = ws.dt_policy(xi_max, c_max, coeffs, opts.cfl);
    } else {
      dt = opts.cfl * 0.5 * ws.h;
      if (c_max > 0.0)
        dt = std::min(dt, opts.cfl * 4.0 * coeffs.a(0.0) / (c_max * c_max));
    }
    dt = std::min({dt, opts.dt_max, target - t});

    double new_max = 0.0;
    if (opts.stepper == TimeStepper::explicit_euler) {
      ws.eval_rhs();
      for (int i = 0; i < n; ++i) {
        u[i] += dt * ws.rhs[i];
        new_max = std::max(new_max, std::abs(u[i]));
      }
    } else {
      // Implicit diffusion with the lagged coefficients; explicit source.
      const double c0r = 2.0 * ws.dimension / (ws.h * ws.h) * ws.coef_a[0];
      diag[0] = 1.0 + dt * c0r;
      upper[0] = -dt * c0r;
      lower[0] = 0.0;
      rhs_vec[0] = u[0];
      for (int i = 1; i < n; ++i) {
        const double cw =
            ws.rhalf_pow[i - 1] * ws.coef_a[i - 1] / (ws.r_pow[i] * ws.h * ws.h);
        const double ce =
            ws.rhalf_pow[i] * ws.coef_a[i] / (ws.r_pow[i] * ws.h * ws.h);
        diag[i] = 1.0 + dt * (cw + ce);
        lower[i] = -dt * cw;
        upper[i] = (i < n - 1) ? -dt * ce : 0.0;  // east neighbour of i=n-1 is pinned
        rhs_vec[i] = u[i] + dt * ws.source[i];
      }
      solve_tridiagonal(lower, diag, upper, rhs_vec);
      for (int i = 0; i < n; ++i) {
        u[i] = rhs_vec[i];
        new_max = std::max(new_max, std::abs(u[i]));
      }
    }
    u[n] = 0.0;
    t += dt;
    ++traj.steps_taken;

    if (new_max > blow_up)
      throw std::runtime_error(
          "solver blow-up guard tripped at t = " + std::to_string(t) +
          ": max |u| = " + std::to_string(new_max) + " exceeds " +
          std::to_string(blow_up) + " (scheme failure; the solution is a priori bounded)");

    if (t >= target - 1e-14 * std::max(1.0, target)) {
      t = target;
      record(t, u);
      ++next_out;
    }
  }
  return traj;
}

}  // namespace phj
