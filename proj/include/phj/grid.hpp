#pragma once

#include <vector>

namespace phj {

/// Uniform radial mesh on [0,1]: nodes r_i = i/cells, i = 0..cells.
struct RadialGrid {
  int cells = 0;

  double spacing() const { return 1.0 / cells; }
  double node(int i) const { return static_cast<double>(i) / cells; }
  int nodes() const { return cells + 1; }

  bool operator==(const RadialGrid&) const = default;
};

/// A radial profile sampled at the grid nodes. Dirichlet-compatible states have
/// values.back() == 0.
struct RadialField {
  RadialGrid grid;
  std::vector<double> values;

  double sup_norm() const;
  double min_value() const;
  /// Extrema of the one-sided differences (values[i+1]-values[i])/h, i = 0..cells-1.
  double max_forward_diff() const;
  double min_forward_diff() const;
};

RadialField make_field(const RadialGrid& grid, double fill = 0.0);

/// Time-stamped solver output: states at the requested output times together
/// with their sup-norms and discrete gradient extrema.
struct Trajectory {
  std::vector<double> times;
  std::vector<RadialField> states;
  std::vector<double> sup_norms;
  std::vector<double> grad_min;
  std::vector<double> grad_max;
  long long steps_taken = 0;
};

}  // namespace phj
