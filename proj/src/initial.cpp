#include "phj/initial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "phj/steady.hpp"

namespace phj {

RadialField make_initial(const InitialData& init, const RadialGrid& grid,
                         const ProblemParams& params, double quad_tol) {
  RadialField f = make_field(grid);
  switch (init.kind) {
    case InitialData::Kind::zero:
      break;
    case InitialData::Kind::steady: {
      const SteadyState ss(params, init.theta, quad_tol);
      for (int i = 0; i <= grid.cells; ++i) f.values[i] = ss.value(grid.node(i));
      break;
    }
    case InitialData::Kind::parabolic: {
      if (init.amplitude < 0.0)
        throw std::invalid_argument("parabolic amplitude must be non-negative");
      for (int i = 0; i <= grid.cells; ++i) {
        const double r = grid.node(i);
        f.values[i] = init.amplitude * (1.0 - r * r);
      }
      break;
    }
    case InitialData::Kind::bump: {
      if (!(init.width > 0.0))
        throw std::invalid_argument("bump width must be positive");
      if (init.height < 0.0)
        throw std::invalid_argument("bump height must be non-negative");
      if (!(init.center >= 0.0) || init.center + init.width > 1.0)
        throw std::invalid_argument(
            "bump support must stay inside [0,1]: need center >= 0 and "
            "center + width <= 1");
      for (int i = 0; i <= grid.cells; ++i) {
        const double z = (grid.node(i) - init.center) / init.width;
        if (std::abs(z) < 1.0)
          f.values[i] = init.height * std::exp(1.0 - 1.0 / (1.0 - z * z));
      }
      break;
    }
    case InitialData::Kind::file:
      return load_profile(init.path, grid);
  }
  f.values[grid.cells] = 0.0;
  return f;
}

RadialField load_profile(const std::string& path, const RadialGrid& grid) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open initial profile: " + path);
  std::vector<double> rs, vs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double r, v;
    if (!(ls >> r)) continue;  // blank or comment-only line
    if (!(ls >> v))
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected two columns (r value)");
    if (!rs.empty() && r <= rs.back())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": radii must be strictly increasing");
    rs.push_back(r);
    vs.push_back(v);
  }
  if (rs.size() < 2)
    throw std::invalid_argument(path + ": need at least two samples");
  if (std::abs(rs.front()) > 1e-12 || std::abs(rs.back() - 1.0) > 1e-12)
    throw std::invalid_argument(path + ": samples must span r = 0 to r = 1");
  if (vs.back() != 0.0)
    throw std::invalid_argument(path +
                                ": profile must satisfy the Dirichlet value "
                                "u(1) = 0 exactly");

  RadialField f = make_field(grid);
  std::size_t seg = 0;
  for (int i = 0; i <= grid.cells; ++i) {
    const double r = grid.node(i);
    while (seg + 2 < rs.size() && rs[seg + 1] < r) ++seg;
    const double t = (r - rs[seg]) / (rs[seg + 1] - rs[seg]);
    f.values[i] = vs[seg] + std::clamp(t, 0.0, 1.0) * (vs[seg + 1] - vs[seg]);
  }
  f.values[grid.cells] = 0.0;
  return f;
}

}  // namespace phj
