#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "phj/config.hpp"
#include "phj/diagnostics.hpp"
#include "phj/grid.hpp"

namespace phj {

/// Everything one simulate run produces, before any file is written.
struct RunArtifacts {
  RunConfig config;
  double epsilon = 0.0;  // resolved from the policy
  Trajectory trajectory;
  ConvergenceReport report;
  std::vector<CheckResult> property_checks;  // trajectory invariants
  bool all_passed = false;
};

RunArtifacts run_simulation(const RunConfig& config);

/// Writes trajectory.csv (time,r,u), distances.csv (time,distance),
/// summary.json and report.json under dir, plus config.txt with the canonical
/// serialized config. Outputs are byte-identical across runs of the same
/// config except the metadata "created" field.
void write_run_artifacts(const RunArtifacts& artifacts, const std::string& dir);

/// Named invariant suites: steady-family, envelopes, solver-properties,
/// convergence. Returns one result per check; log (optional) receives a
/// human-readable line per check as it completes.
std::vector<CheckResult> run_suite(const std::string& name,
                                   std::ostream* log = nullptr);

bool all_pass(const std::vector<CheckResult>& checks);

struct SweepRow {
  std::string label;
  RunConfig config;
  bool ok = false;         // run completed and every check passed
  std::string error;       // non-empty if the run threw
  double epsilon = 0.0;
  double theta_fit = 1.0;
  double M_inf_est = 0.0;
  double final_distance = 0.0;
  bool converged = false;
  double sup_mono_slack = 0.0;
  double min_value = 0.0;
};

/// Expands and executes the sweep, up to `jobs` runs in parallel; each run owns
/// out_dir/<label>. Partial failures are recorded per row and the sweep
/// continues. Rows come back sorted by label.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const std::string& out_dir,
                                int jobs, std::ostream* log = nullptr);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// Steady-state table for the CLI: columns r, w, dw, first-integral residual
/// (the residual column is 0 outside (theta, 1) where the identity lives).
std::string steady_table_csv(const ProblemParams& params, double theta,
                             int samples, double quad_tol);

}  // namespace phj
