#pragma once

#include <string>
#include <vector>

#include "relqosc/error.hpp"

namespace relqosc {

/// Uniform interior grid on (x_min, x_max). The endpoints carry Dirichlet
/// zeros and are not stored; node i (0-based) sits at x_min + (i+1) h.
struct Grid {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_points = 4000;

  double h() const { return (x_max - x_min) / (n_points + 1); }
  double node(int i) const { return x_min + (i + 1) * h(); }

  std::vector<double> nodes() const {
    std::vector<double> xs(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) xs[static_cast<std::size_t>(i)] = node(i);
    return xs;
  }

  void validate() const {
    if (n_points < 3) {
      throw config_error("grid needs at least 3 interior points, got " + std::to_string(n_points));
    }
    if (!(x_max > x_min)) throw config_error("grid requires x_max > x_min");
  }
};

/// Values of a real function on the interior nodes of a grid.
struct SampledFunction {
  Grid grid;
  std::vector<double> values;
};

}  // namespace relqosc
