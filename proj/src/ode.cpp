#include "lucaslab/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lucaslab {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
// 5th-order minus embedded 4th-order weights
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

constexpr long kMaxSteps = 10'000'000;

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

std::vector<std::vector<double>> integrate_ode(const OdeRhs& rhs, std::span<const double> y0,
                                               const TimeGrid& grid, const Tolerance& tol) {
  tol.validate();
  grid.validate();
  const std::size_t dim = y0.size();
  if (dim == 0) throw DomainError("integrate_ode: empty state vector");
  if (!all_finite(y0)) throw NonFiniteState(grid.t_start());

  std::vector<std::vector<double>> out;
  out.reserve(grid.size());
  std::vector<double> y(y0.begin(), y0.end());
  out.push_back(y);
  if (grid.size() == 1) return out;

  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  std::vector<double> ytmp(dim), y5(dim);

  double t = grid.t_start();
  rhs(t, y, k1);
  if (!all_finite(k1)) throw NonFiniteState(t);

  // initial step from the magnitude of y and y'
  double h;
  {
    double dy = 0, df = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double sc = tol.abs_tol + tol.rel_tol * std::abs(y[i]);
      dy = std::max(dy, std::abs(y[i]) / sc);
      df = std::max(df, std::abs(k1[i]) / sc);
    }
    h = (df > 0 && dy > 0) ? 0.01 * dy / df : 1e-3;
    h = std::min(h, grid.t_end() - t);
    h = std::max(h, 1e-8 * (grid.t_end() - t));
  }

  std::size_t next = 1;
  long steps = 0;

  while (next < grid.size()) {
    if (++steps > kMaxSteps) throw NonConvergence("integrate_ode: step budget exhausted");

    const double t_target = grid.points[next];
    bool at_target = false;
    if (h >= t_target - t) {
      h = t_target - t;
      at_target = true;
    }
    const double hmin = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (h < hmin) throw StepSizeUnderflow(t);

    auto stage = [&](std::vector<double>& k, double c, auto&&... aks) {
      for (std::size_t i = 0; i < dim; ++i) {
        double acc = 0.0;
        ((acc += aks.first * (*aks.second)[i]), ...);
        ytmp[i] = y[i] + h * acc;
      }
      rhs(t + c * h, ytmp, k);
      if (!all_finite(k)) throw NonFiniteState(t + c * h);
    };
    using P = std::pair<double, const std::vector<double>*>;
    stage(k2, kC2, P{kA21, &k1});
    stage(k3, kC3, P{kA31, &k1}, P{kA32, &k2});
    stage(k4, kC4, P{kA41, &k1}, P{kA42, &k2}, P{kA43, &k3});
    stage(k5, kC5, P{kA51, &k1}, P{kA52, &k2}, P{kA53, &k3}, P{kA54, &k4});
    stage(k6, 1.0, P{kA61, &k1}, P{kA62, &k2}, P{kA63, &k3}, P{kA64, &k4}, P{kA65, &k5});

    for (std::size_t i = 0; i < dim; ++i)
      y5[i] = y[i] + h * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] + kB5 * k5[i] + kB6 * k6[i]);
    rhs(t + h, y5, k7);  // FSAL stage
    if (!all_finite(y5) || !all_finite(k7)) throw NonFiniteState(t + h);

    double errnorm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double err = h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                              kE6 * k6[i] + kE7 * k7[i]);
      const double sc = tol.abs_tol + tol.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      errnorm += (err / sc) * (err / sc);
    }
    errnorm = std::sqrt(errnorm / double(dim));

    if (errnorm <= 1.0) {
      t = at_target ? t_target : t + h;
      y.swap(y5);
      k1.swap(k7);  // FSAL: k7 is rhs at the accepted state
      if (at_target) {
        out.push_back(y);
        ++next;
      }
      const double factor =
          errnorm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(errnorm, -0.2), 0.2, 5.0);
      h *= factor;
      h = std::min(h, grid.t_end() - grid.t_start());
    } else {
      h *= std::clamp(0.9 * std::pow(errnorm, -0.2), 0.1, 0.9);
    }
  }
  return out;
}

}  // namespace lucaslab
