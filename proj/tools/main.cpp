#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "phj/run.hpp"
#include "phj/steady.hpp"

namespace {

// Config and precondition errors exit 2; solver aborts (blow-up guard) exit 3;
// failed checks exit 1. A structured error object goes to stdout so batch
// callers never have to parse prose.
int fail_with(const std::string& kind, const std::exception& err) {
  nlohmann::json out;
  out["schema"] = 1;
  out["error"] = {{"kind", kind}, {"message", err.what()}};
  std::cout << out.dump(2) << "\n";
  std::cerr << "error (" << kind << "): " << err.what() << "\n";
  return kind == "runtime" ? 3 : 2;
}

void print_checks_json(const std::vector<phj::CheckResult>& checks,
                       const std::string& out_path) {
  nlohmann::json doc;
  doc["schema"] = 1;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name},
                   {"threshold", c.threshold},
                   {"measured", c.measured},
                   {"pass", c.pass}});
  doc["checks"] = arr;
  doc["all_passed"] = phj::all_pass(checks);
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << doc.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "phj: radial steady states, regularized parabolic runs, and convergence "
      "diagnostics for du/dt = div(|Du|^{p-2}Du) + |Du|^q on the unit ball"};
  app.require_subcommand(1);

  // --- steady ---
  auto* steady = app.add_subcommand(
      "steady", "Tabulate a steady profile: r, w, dw, first-integral residual");
  double p = 2.0, q = 0.5, theta = 0.0, max_value = -1.0, quad_tol = 1e-12;
  int dim = 2, samples = 101;
  std::string out_path;
  steady->add_option("--p", p, "diffusion exponent (>= 2)");
  steady->add_option("--q", q, "source exponent (0 < q < p-1)");
  steady->add_option("--dim", dim, "spatial dimension (>= 2)");
  auto* theta_opt = steady->add_option("--theta", theta, "plateau radius in [0,1]");
  auto* max_opt = steady->add_option("--max-value", max_value,
                                     "centre value; resolved to theta first");
  steady->add_option("--samples", samples, "table rows (default 101)");
  steady->add_option("--quad-tol", quad_tol, "quadrature tolerance");
  steady->add_option("--out", out_path, "write CSV here instead of stdout");
  theta_opt->excludes(max_opt);
  max_opt->excludes(theta_opt);

  // --- invert ---
  auto* invert = app.add_subcommand(
      "invert", "Resolve theta from a target maximum via the monotone max map");
  double inv_M = 0.0, theta_tol = 1e-10;
  invert->add_option("--p", p, "diffusion exponent");
  invert->add_option("--q", q, "source exponent");
  invert->add_option("--dim", dim, "spatial dimension");
  invert->add_option("--max-value", inv_M, "target maximum in [0, c0/alpha]")
      ->required();
  invert->add_option("--tol", theta_tol, "bisection tolerance in theta");

  // --- simulate ---
  auto* simulate =
      app.add_subcommand("simulate", "Run one configured parabolic solve");
  std::string config_path, out_dir;
  simulate->add_option("--config", config_path, "run config file")->required();
  simulate->add_option("--out", out_dir, "output directory (overrides config)");

  // --- verify ---
  auto* verify = app.add_subcommand("verify", "Run a named invariant suite");
  std::string suite;
  verify
      ->add_option("--suite", suite,
                   "steady-family | envelopes | solver-properties | convergence")
      ->required();
  verify->add_option("--out", out_path, "write the JSON verdict here");

  // --- sweep ---
  auto* sweep = app.add_subcommand("sweep", "Expand and run a parameter sweep");
  int jobs = 1;
  sweep->add_option("--config", config_path, "sweep config file")->required();
  sweep->add_option("--out", out_dir, "aggregate output directory")->required();
  sweep->add_option("--jobs", jobs, "parallel run width (default 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*steady) {
      const phj::ProblemParams params{p, q, dim};
      double th = theta;
      if (*max_opt) {
        th = phj::theta_from_max(params, max_value, 1e-10, quad_tol);
        std::cerr << "theta = " << th << " (resolved from max value "
                  << max_value << ")\n";
      }
      std::string table = phj::steady_table_csv(params, th, samples, quad_tol);
      if (*max_opt) table = "# theta = " + std::to_string(th) + "\n" + table;
      if (out_path.empty()) {
        std::cout << table;
      } else {
        std::ofstream out(out_path);
        out << table;
      }
      return 0;
    }

    if (*invert) {
      const phj::ProblemParams params{p, q, dim};
      std::cout << phj::theta_from_max(params, inv_M, theta_tol) << "\n";
      return 0;
    }

    if (*simulate) {
      phj::RunConfig cfg = phj::load_run_config(config_path);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      const phj::RunArtifacts art = phj::run_simulation(cfg);
      phj::write_run_artifacts(art, cfg.out_dir);
      std::cerr << "run written to " << cfg.out_dir
                << " (converged = " << (art.report.converged ? "yes" : "no")
                << ", theta_fit = " << art.report.theta_fit << ")\n";
      return art.all_passed ? 0 : 1;
    }

    if (*verify) {
      const auto checks = phj::run_suite(suite, &std::cout);
      print_checks_json(checks, out_path);
      return phj::all_pass(checks) ? 0 : 1;
    }

    if (*sweep) {
      const phj::SweepSpec spec = phj::load_sweep_spec(config_path);
      std::filesystem::create_directories(out_dir);
      const int width = jobs > 1 ? jobs : spec.jobs;
      const auto rows = phj::run_sweep(spec, out_dir, width, &std::cerr);
      phj::write_sweep_csv(rows, out_dir + "/sweep.csv");
      const bool ok = std::all_of(rows.begin(), rows.end(),
                                  [](const phj::SweepRow& r) { return r.ok; });
      std::cerr << rows.size() << " runs, aggregate in " << out_dir
                << "/sweep.csv\n";
      return ok ? 0 : 1;
    }
  } catch (const std::invalid_argument& err) {
    return fail_with("config", err);
  } catch (const std::domain_error& err) {
    return fail_with("domain", err);
  } catch (const std::runtime_error& err) {
    return fail_with("runtime", err);
  }
  return 0;
}
