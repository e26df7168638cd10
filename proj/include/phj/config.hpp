#pragma once

#include <map>
#include <string>
#include <vector>

#include "phj/initial.hpp"
#include "phj/params.hpp"
#include "phj/solver.hpp"

namespace phj {

struct ToleranceConfig {
  double quad_tol = 1e-12;
  double theta_tol = 1e-10;
  double conv_tol = 5e-3;
  double tail_fraction = 0.25;
  double cfl = 0.9;
  double blow_up_factor = 10.0;

  bool operator==(const ToleranceConfig&) const = default;
};

/// One run, as read from a sectioned key-value config file. Sections: problem,
/// grid, time, initial, tolerances, output. Unknown sections or keys are errors.
struct RunConfig {
  ProblemParams params{2.0, 0.5, 2};
  int cells = 256;
  EpsilonPolicy epsilon = EpsilonPolicy::h_squared();
  double horizon = 5.0;
  int outputs = 41;
  TimeStepper stepper = TimeStepper::explicit_euler;
  InitialData initial{InitialData::Kind::parabolic, 0.0, 0.01, 0.0, 0.0, 0.0, {}};
  ToleranceConfig tol;
  std::string out_dir = "out";

  std::vector<double> output_times() const;
  void validate_config() const;  // throws with the offending key in the message

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);
std::string serialize_run_config(const RunConfig& config);

/// Cross-product sweep over a base config. The [sweep] section lists the varied
/// keys (p, q, dim, cells, theta, epsilon) as comma-separated values plus an
/// optional jobs count.
struct SweepSpec {
  RunConfig base;
  std::vector<std::pair<std::string, std::vector<std::string>>> vary;
  int jobs = 1;
};

SweepSpec parse_sweep_spec(const std::string& text);
SweepSpec load_sweep_spec(const std::string& path);

/// Expands the cross product; each entry is (label, config) with labels like
/// "p=2+q=0.5+cells=256", sorted lexicographically.
std::vector<std::pair<std::string, RunConfig>> expand_sweep(const SweepSpec& spec);

}  // namespace phj
