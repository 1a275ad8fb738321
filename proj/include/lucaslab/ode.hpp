#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lucaslab/time_grid.hpp"
#include "lucaslab/tolerance.hpp"

namespace lucaslab {

/// dydt = rhs(t, y); dydt.size() == y.size().
using OdeRhs = std::function<void(double, std::span<const double>, std::span<double>)>;

/// Integrates y' = rhs(t, y) from grid.t_start() with y(t_start) = y0 and
/// returns the solution at every grid point (first entry is y0 itself).
///
/// Embedded Dormand-Prince 5(4) pair with proportional step control; steps
/// are capped at grid points, so samples are exact-time hits. Local error
/// per step is kept below abs_tol + rel_tol*|y| componentwise.
///
/// Throws StepSizeUnderflow when the controller collapses (stiffness or
/// blow-up), NonFiniteState when the state or derivative stops being
/// finite, NonConvergence when the step budget is exhausted.
std::vector<std::vector<double>> integrate_ode(const OdeRhs& rhs, std::span<const double> y0,
                                               const TimeGrid& grid, const Tolerance& tol);

}  // namespace lucaslab
