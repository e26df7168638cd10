#pragma once

#include <string>

#include "phj/grid.hpp"
#include "phj/params.hpp"

namespace phj {

/// Initial-data selector. Catalog:
///   zero                        u = 0
///   steady(theta)               w_theta sampled at the nodes
///   parabolic(amplitude)        amplitude (1 - r^2)
///   bump(center,width,height)   height e^{1 - 1/(1 - z^2)}, z = (r-center)/width
///   file(path)                  two-column text, resampled piecewise-linearly
struct InitialData {
  enum class Kind { zero, steady, parabolic, bump, file };
  Kind kind = Kind::zero;
  double theta = 0.0;
  double amplitude = 0.0;
  double center = 0.0;
  double width = 0.0;
  double height = 0.0;
  std::string path;

  bool operator==(const InitialData&) const = default;
};

RadialField make_initial(const InitialData& init, const RadialGrid& grid,
                         const ProblemParams& params, double quad_tol = 1e-12);

/// Whitespace-separated (r, value) pairs, '#' comments. The samples must start
/// at r = 0, end at r = 1 with value 0, and be strictly increasing in r.
RadialField load_profile(const std::string& path, const RadialGrid& grid);

}  // namespace phj
