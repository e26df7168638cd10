#pragma once

#include <vector>

#include "phj/coeffs.hpp"
#include "phj/grid.hpp"

namespace phj {

enum class TimeStepper { explicit_euler, semi_implicit };

/// How the regularization parameter is chosen for a given grid.
struct EpsilonPolicy {
  enum class Kind { explicit_value, sqrt_h, h_squared };
  Kind kind = Kind::h_squared;
  double value = 0.0;  // used by explicit_value

  static EpsilonPolicy fixed(double eps) {
    return {Kind::explicit_value, eps};
  }
  static EpsilonPolicy sqrt_h() { return {Kind::sqrt_h, 0.0}; }
  static EpsilonPolicy h_squared() { return {Kind::h_squared, 0.0}; }

  double resolve(const RadialGrid& grid) const;

  bool operator==(const EpsilonPolicy&) const = default;
};

struct SolverOptions {
  TimeStepper stepper = TimeStepper::explicit_euler;
  double cfl = 0.9;
  /// Abort threshold: any value above blow_up_factor * ||u0||_inf + 1 aborts the run.
  double blow_up_factor = 10.0;
  double dt_max = 1e300;
};

/// Largest stable explicit step for the current state: the diffusion CFL
/// cfl * h^2 / (2N max a) capped by the gradient-source bound cfl * 4 a(0) / c_max^2.
double stable_dt(const RadialField& state, const RegularizedCoefficients& coeffs,
                 double cfl = 0.9);

/// One explicit Euler step of the semi-discrete system
///   du_i/dt = (1/r_i^{N-1}) D_-(r^{N-1} a(|Du|^2) Du)_i + b(|D_c u_i|^2)
/// with flux form on half nodes, Neumann symmetry at the origin (ghost
/// u_{-1} = u_1, so the origin diffusion term is N (2/h^2)(u_1-u_0) a and the
/// centered gradient there vanishes), and the boundary value pinned to zero.
/// Rejects dt above the stability policy and states violating the Dirichlet value.
RadialField step(const RadialField& state, double dt,
                 const RegularizedCoefficients& coeffs, double cfl = 0.9);

/// Integrates from u0 and records the state at each requested output time.
/// u0 must be non-negative with u0(1) = 0. Output times must be strictly
/// increasing within [0, t_end]; t = 0 records the initial state.
Trajectory solve(const RadialField& u0, const RegularizedCoefficients& coeffs,
                 double t_end, const std::vector<double>& output_times,
                 const SolverOptions& opts = {});

}  // namespace phj
