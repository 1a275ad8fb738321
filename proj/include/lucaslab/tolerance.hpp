#pragma once

#include "lucaslab/error.hpp"

namespace lucaslab {

/// Accuracy request shared by quadrature and ODE integration.
/// Defaults are tight enough that model-level checks at 1e-6 are never
/// limited by the numerics underneath them.
struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;

  void validate() const {
    if (abs_tol < 0 || rel_tol < 0 || abs_tol + rel_tol <= 0)
      throw ConfigError("tolerance: need abs_tol >= 0, rel_tol >= 0, abs_tol + rel_tol > 0");
    if (max_subdivisions < 1)
      throw ConfigError("tolerance: max_subdivisions must be >= 1");
  }
};

}  // namespace lucaslab
