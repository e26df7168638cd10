#include "phj/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phj {

double RadialField::sup_norm() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double RadialField::min_value() const {
  double m = values.empty() ? 0.0 : values[0];
  for (double v : values) m = std::min(m, v);
  return m;
}

double RadialField::max_forward_diff() const {
  const double h = grid.spacing();
  double m = -1e300;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    m = std::max(m, (values[i + 1] - values[i]) / h);
  return m;
}

double RadialField::min_forward_diff() const {
  const double h = grid.spacing();
  double m = 1e300;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    m = std::min(m, (values[i + 1] - values[i]) / h);
  return m;
}

RadialField make_field(const RadialGrid& grid, double fill) {
  if (grid.cells < 1) throw std::invalid_argument("grid needs at least one cell");
  return RadialField{grid, std::vector<double>(grid.nodes(), fill)};
}

}  // namespace phj
