#include "phj/config.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace phj {

namespace {

using Section = std::map<std::string, std::string>;
using Ini = std::map<std::string, Section>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Ini parse_ini(const std::string& text) {
  Ini ini;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": empty section name");
      ini[section];  // sections may be empty
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    if (section.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key or value");
    if (!ini[section].emplace(key, val).second)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
  }
  return ini;
}

double to_double(const std::string& section, const std::string& key,
                 const std::string& val) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(val, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != val.size())
    throw std::invalid_argument("config [" + section + "] " + key + " = '" + val +
                                "' is not a number");
  return out;
}

int to_int(const std::string& section, const std::string& key,
           const std::string& val) {
  const double d = to_double(section, key, val);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw std::invalid_argument("config [" + section + "] " + key + " = '" + val +
                                "' is not an integer");
  return i;
}

// Pops key from the section map if present; section strictness is enforced by
// checking the map is empty afterwards.
bool take(Section& sec, const std::string& key, std::string& out) {
  const auto it = sec.find(key);
  if (it == sec.end()) return false;
  out = it->second;
  sec.erase(it);
  return true;
}

void expect_empty(const std::string& name, const Section& sec) {
  if (!sec.empty())
    throw std::invalid_argument("config [" + name + "]: unknown key '" +
                                sec.begin()->first + "'");
}

EpsilonPolicy parse_epsilon(const std::string& val) {
  if (val == "sqrt_h") return EpsilonPolicy::sqrt_h();
  if (val == "h2") return EpsilonPolicy::h_squared();
  return EpsilonPolicy::fixed(to_double("grid", "epsilon", val));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string epsilon_to_string(const EpsilonPolicy& eps) {
  switch (eps.kind) {
    case EpsilonPolicy::Kind::sqrt_h: return "sqrt_h";
    case EpsilonPolicy::Kind::h_squared: return "h2";
    case EpsilonPolicy::Kind::explicit_value: return format_double(eps.value);
  }
  return "h2";
}

RunConfig config_from_ini(Ini ini) {
  RunConfig cfg;
  std::string v;

  if (ini.count("problem")) {
    Section sec = ini["problem"];
    if (take(sec, "p", v)) cfg.params.p = to_double("problem", "p", v);
    if (take(sec, "q", v)) cfg.params.q = to_double("problem", "q", v);
    if (take(sec, "dim", v)) cfg.params.dim = to_int("problem", "dim", v);
    expect_empty("problem", sec);
    ini.erase("problem");
  }
  if (ini.count("grid")) {
    Section sec = ini["grid"];
    if (take(sec, "cells", v)) cfg.cells = to_int("grid", "cells", v);
    if (take(sec, "epsilon", v)) cfg.epsilon = parse_epsilon(v);
    expect_empty("grid", sec);
    ini.erase("grid");
  }
  if (ini.count("time")) {
    Section sec = ini["time"];
    if (take(sec, "horizon", v)) cfg.horizon = to_double("time", "horizon", v);
    if (take(sec, "outputs", v)) cfg.outputs = to_int("time", "outputs", v);
    if (take(sec, "stepper", v)) {
      if (v == "explicit")
        cfg.stepper = TimeStepper::explicit_euler;
      else if (v == "semi_implicit")
        cfg.stepper = TimeStepper::semi_implicit;
      else
        throw std::invalid_argument(
            "config [time] stepper must be 'explicit' or 'semi_implicit'");
    }
    expect_empty("time", sec);
    ini.erase("time");
  }
  if (ini.count("initial")) {
    Section sec = ini["initial"];
    std::string kind;
    if (!take(sec, "kind", kind))
      throw std::invalid_argument("config [initial]: missing 'kind'");
    cfg.initial = InitialData{};
    if (kind == "zero") {
      cfg.initial.kind = InitialData::Kind::zero;
    } else if (kind == "steady") {
      cfg.initial.kind = InitialData::Kind::steady;
      if (!take(sec, "theta", v))
        throw std::invalid_argument("config [initial]: steady needs 'theta'");
      cfg.initial.theta = to_double("initial", "theta", v);
    } else if (kind == "parabolic") {
      cfg.initial.kind = InitialData::Kind::parabolic;
      if (!take(sec, "amplitude", v))
        throw std::invalid_argument(
            "config [initial]: parabolic needs 'amplitude'");
      cfg.initial.amplitude = to_double("initial", "amplitude", v);
    } else if (kind == "bump") {
      cfg.initial.kind = InitialData::Kind::bump;
      if (!take(sec, "center", v))
        throw std::invalid_argument("config [initial]: bump needs 'center'");
      cfg.initial.center = to_double("initial", "center", v);
      if (!take(sec, "width", v))
        throw std::invalid_argument("config [initial]: bump needs 'width'");
      cfg.initial.width = to_double("initial", "width", v);
      if (!take(sec, "height", v))
        throw std::invalid_argument("config [initial]: bump needs 'height'");
      cfg.initial.height = to_double("initial", "height", v);
    } else if (kind == "file") {
      cfg.initial.kind = InitialData::Kind::file;
      if (!take(sec, "path", v))
        throw std::invalid_argument("config [initial]: file needs 'path'");
      cfg.initial.path = v;
    } else {
      throw std::invalid_argument("config [initial]: unknown kind '" + kind +
                                  "'");
    }
    expect_empty("initial", sec);
    ini.erase("initial");
  }
  if (ini.count("tolerances")) {
    Section sec = ini["tolerances"];
    if (take(sec, "quad_tol", v))
      cfg.tol.quad_tol = to_double("tolerances", "quad_tol", v);
    if (take(sec, "theta_tol", v))
      cfg.tol.theta_tol = to_double("tolerances", "theta_tol", v);
    if (take(sec, "conv_tol", v))
      cfg.tol.conv_tol = to_double("tolerances", "conv_tol", v);
    if (take(sec, "tail_fraction", v))
      cfg.tol.tail_fraction = to_double("tolerances", "tail_fraction", v);
    if (take(sec, "cfl", v)) cfg.tol.cfl = to_double("tolerances", "cfl", v);
    if (take(sec, "blow_up_factor", v))
      cfg.tol.blow_up_factor = to_double("tolerances", "blow_up_factor", v);
    expect_empty("tolerances", sec);
    ini.erase("tolerances");
  }
  if (ini.count("output")) {
    Section sec = ini["output"];
    if (take(sec, "dir", v)) cfg.out_dir = v;
    expect_empty("output", sec);
    ini.erase("output");
  }
  if (!ini.empty())
    throw std::invalid_argument("config: unknown section '[" +
                                ini.begin()->first + "]'");
  return cfg;
}

}  // namespace

std::vector<double> RunConfig::output_times() const {
  std::vector<double> times(outputs);
  for (int k = 0; k < outputs; ++k)
    times[k] = horizon * static_cast<double>(k) / (outputs - 1);
  times.back() = horizon;
  return times;
}

void RunConfig::validate_config() const {
  validate(params);
  if (cells < 16) throw std::invalid_argument("config [grid] cells must be >= 16");
  if (epsilon.kind == EpsilonPolicy::Kind::explicit_value &&
      !(epsilon.value > 0.0 && epsilon.value < 1.0))
    throw std::invalid_argument("config [grid] epsilon must lie in (0,1)");
  if (!(horizon > 0.0))
    throw std::invalid_argument("config [time] horizon must be positive");
  if (outputs < 2)
    throw std::invalid_argument("config [time] outputs must be >= 2");
  if (!(tol.quad_tol > 0.0 && tol.theta_tol > 0.0 && tol.conv_tol > 0.0))
    throw std::invalid_argument("config [tolerances] values must be positive");
  if (!(tol.tail_fraction > 0.0 && tol.tail_fraction <= 0.5))
    throw std::invalid_argument(
        "config [tolerances] tail_fraction must lie in (0, 0.5]");
  if (!(tol.cfl > 0.0 && tol.cfl <= 1.0))
    throw std::invalid_argument("config [tolerances] cfl must lie in (0,1]");
  if (initial.kind == InitialData::Kind::file &&
      !std::filesystem::exists(initial.path))
    throw std::invalid_argument("config [initial] path does not exist: " +
                                initial.path);
}

RunConfig parse_run_config(const std::string& text) {
  return config_from_ini(parse_ini(text));
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string serialize_run_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[problem]\n";
  out << "p = " << format_double(cfg.params.p) << "\n";
  out << "q = " << format_double(cfg.params.q) << "\n";
  out << "dim = " << cfg.params.dim << "\n";
  out << "\n[grid]\n";
  out << "cells = " << cfg.cells << "\n";
  out << "epsilon = " << epsilon_to_string(cfg.epsilon) << "\n";
  out << "\n[time]\n";
  out << "horizon = " << format_double(cfg.horizon) << "\n";
  out << "outputs = " << cfg.outputs << "\n";
  out << "stepper = "
      << (cfg.stepper == TimeStepper::explicit_euler ? "explicit"
                                                     : "semi_implicit")
      << "\n";
  out << "\n[initial]\n";
  switch (cfg.initial.kind) {
    case InitialData::Kind::zero:
      out << "kind = zero\n";
      break;
    case InitialData::Kind::steady:
      out << "kind = steady\n";
      out << "theta = " << format_double(cfg.initial.theta) << "\n";
      break;
    case InitialData::Kind::parabolic:
      out << "kind = parabolic\n";
      out << "amplitude = " << format_double(cfg.initial.amplitude) << "\n";
      break;
    case InitialData::Kind::bump:
      out << "kind = bump\n";
      out << "center = " << format_double(cfg.initial.center) << "\n";
      out << "width = " << format_double(cfg.initial.width) << "\n";
      out << "height = " << format_double(cfg.initial.height) << "\n";
      break;
    case InitialData::Kind::file:
      out << "kind = file\n";
      out << "path = " << cfg.initial.path << "\n";
      break;
  }
  out << "\n[tolerances]\n";
  out << "quad_tol = " << format_double(cfg.tol.quad_tol) << "\n";
  out << "theta_tol = " << format_double(cfg.tol.theta_tol) << "\n";
  out << "conv_tol = " << format_double(cfg.tol.conv_tol) << "\n";
  out << "tail_fraction = " << format_double(cfg.tol.tail_fraction) << "\n";
  out << "cfl = " << format_double(cfg.tol.cfl) << "\n";
  out << "blow_up_factor = " << format_double(cfg.tol.blow_up_factor) << "\n";
  out << "\n[output]\n";
  out << "dir = " << cfg.out_dir << "\n";
  return out.str();
}

SweepSpec parse_sweep_spec(const std::string& text) {
  Ini ini = parse_ini(text);
  SweepSpec spec;
  if (ini.count("sweep")) {
    Section sec = ini["sweep"];
    std::string v;
    if (take(sec, "jobs", v)) spec.jobs = to_int("sweep", "jobs", v);
    static const char* keys[] = {"p", "q", "dim", "cells", "theta", "epsilon"};
    for (const char* key : keys) {
      if (!take(sec, key, v)) continue;
      std::vector<std::string> vals;
      std::istringstream vs(v);
      std::string item;
      while (std::getline(vs, item, ',')) {
        item = trim(item);
        if (item.empty())
          throw std::invalid_argument("config [sweep] " + std::string(key) +
                                      ": empty list entry");
        vals.push_back(item);
      }
      if (vals.empty())
        throw std::invalid_argument("config [sweep] " + std::string(key) +
                                    ": empty list");
      spec.vary.emplace_back(key, std::move(vals));
    }
    expect_empty("sweep", sec);
    ini.erase("sweep");
  }
  spec.base = config_from_ini(std::move(ini));
  if (spec.jobs < 1)
    throw std::invalid_argument("config [sweep] jobs must be >= 1");
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sweep config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sweep_spec(ss.str());
}

std::vector<std::pair<std::string, RunConfig>> expand_sweep(
    const SweepSpec& spec) {
  std::vector<std::pair<std::string, RunConfig>> out;
  std::vector<std::size_t> idx(spec.vary.size(), 0);
  while (true) {
    RunConfig cfg = spec.base;
    std::string label;
    for (std::size_t k = 0; k < spec.vary.size(); ++k) {
      const auto& [key, vals] = spec.vary[k];
      const std::string& val = vals[idx[k]];
      if (!label.empty()) label += "+";
      label += key + "=" + val;
      if (key == "p")
        cfg.params.p = to_double("sweep", key, val);
      else if (key == "q")
        cfg.params.q = to_double("sweep", key, val);
      else if (key == "dim")
        cfg.params.dim = to_int("sweep", key, val);
      else if (key == "cells")
        cfg.cells = to_int("sweep", key, val);
      else if (key == "epsilon")
        cfg.epsilon = parse_epsilon(val);
      else if (key == "theta") {
        if (cfg.initial.kind != InitialData::Kind::steady)
          throw std::invalid_argument(
              "config [sweep] theta requires [initial] kind = steady");
        cfg.initial.theta = to_double("sweep", key, val);
      }
    }
    if (label.empty()) label = "base";
    cfg.out_dir += "/" + label;
    out.emplace_back(label, std::move(cfg));
    // next index tuple
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < spec.vary[k].second.size()) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace phj
