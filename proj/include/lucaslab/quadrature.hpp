#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lucaslab/tolerance.hpp"

namespace lucaslab {

/// Integrand evaluated on a batch of abscissae (out[i] = f(s[i])), so the
/// quadrature can hand whole panels to the SIMD kernels.
using BatchIntegrand = std::function<void(std::span<const double>, std::span<double>)>;

/// Wraps a plain scalar callable.
BatchIntegrand batch_from_scalar(std::function<double(double)> f);

struct PanelResult {
  double value;     // 15-point Kronrod estimate
  double abs_value; // integral of |f|, same rule
  double error;     // error estimate (QUADPACK style)
};

/// One 7/15 Gauss-Kronrod panel on [a, b]. Exact to round-off for
/// polynomials up to degree 22. Throws NonFiniteIntegrand.
PanelResult kronrod15(const BatchIntegrand& f, double a, double b);

/// Adaptive quadrature of f over [a, b]: worst-interval-first bisection of
/// GK15 panels until the summed error estimate drops below
/// max(abs_tol, rel_tol*|result|). Throws NonConvergence after
/// max_subdivisions splits, NonFiniteIntegrand on NaN/inf integrand values.
double integrate_finite(const BatchIntegrand& f, double a, double b, const Tolerance& tol);

/// Integral of f over [a, inf) for integrands with a certified envelope
/// |f(s)| <= bound_coeff * e^{-decay_rate * s}. The tail beyond the
/// truncation point T contributes less than abs_tol (rel_tol * bound/rate
/// when abs_tol is zero).
double integrate_tail(const BatchIntegrand& f, double a, double decay_rate,
                      double bound_coeff, const Tolerance& tol);

/// Prefix integrals from `base`: returns v with v[i] = integral of f over
/// [base, points[i]]. Requires base <= points[0] and points increasing.
/// Equivalent to per-point integrate_finite within the additivity bound
/// (each subinterval is integrated adaptively once and accumulated).
std::vector<double> prefix_integrals(const BatchIntegrand& f, double base,
                                     std::span<const double> points, const Tolerance& tol);

/// Incremental antiderivative A(t) = integral of f over [base, t] for
/// queries with mostly increasing t (ODE right-hand sides). Checkpoints
/// previously integrated prefixes so each query only covers the gap back
/// to the nearest checkpoint.
class RunningIntegral {
 public:
  RunningIntegral(BatchIntegrand f, double base, const Tolerance& tol);
  double operator()(double t);

 private:
  BatchIntegrand f_;
  Tolerance tol_;
  std::vector<double> ts_;    // checkpoint times, increasing
  std::vector<double> vals_;  // prefix integrals at ts_
};

}  // namespace lucaslab
