#pragma once

#include <cmath>
#include <vector>

#include "lucaslab/error.hpp"

namespace lucaslab {

/// Strictly increasing sample times, endpoints included.
struct TimeGrid {
  std::vector<double> points;

  double t_start() const { return points.front(); }
  double t_end() const { return points.back(); }
  std::size_t size() const { return points.size(); }

  static TimeGrid uniform(double t0, double t1, std::size_t n) {
    if (n < 1) throw ConfigError("time grid needs at least one point");
    if (n == 1 && t1 != t0) throw ConfigError("single-point grid requires t_end == t_start");
    TimeGrid g;
    g.points.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      g.points[i] = (i + 1 == n) ? t1 : t0 + (t1 - t0) * double(i) / double(n - 1);
    g.validate();
    return g;
  }

  void validate() const {
    if (points.empty()) throw ConfigError("time grid is empty");
    for (double p : points)
      if (!std::isfinite(p)) throw ConfigError("time grid contains a non-finite point");
    for (std::size_t i = 1; i < points.size(); ++i)
      if (!(points[i] > points[i - 1]))
        throw ConfigError("time grid must be strictly increasing");
  }
};

}  // namespace lucaslab
