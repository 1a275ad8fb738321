#pragma once

#include <string>
#include <vector>

#include "lucaslab/diagnostics.hpp"
#include "lucaslab/kernels.hpp"
#include "lucaslab/time_grid.hpp"
#include "lucaslab/tolerance.hpp"
#include "lucaslab/trajectory.hpp"

namespace lucaslab::crra {

/// Lucas-Uzawa model with CRRA utility, curvature sigma != 1.
struct Params {
  double sigma;  // relative risk aversion
  double rho;    // discount rate
  double beta;   // capital elasticity, in (0,1)
  double gamma;  // goods-sector technology level
  double pi;     // capital depreciation rate
  double delta;  // education-sector technology level
};

using lucaslab::ConstraintViolation;

/// Empty iff the parameter set admits the closed-form families:
/// positivity/range checks, sigma != 1, rho < delta < rho + delta*sigma,
/// and eta > 0.
std::vector<ConstraintViolation> validate_params(const Params& p);

/// Constants the trajectory formulas are built from.
struct Derived {
  double z_star;      // steady state of z = u h / k
  double eta;         // decay rate of the F integrand
  double zeta;        // decay rate of the G integrand, eta - relax_rate
  double relax_rate;  // convergence rate of z^{beta-1} toward z*^{beta-1}
  double p_exp;       // (sigma - beta) / sigma, the z power in F and G
  double growth_exp;  // (delta + pi - pi*beta)/beta, the k/h trend exponent
};

/// Requires validate_params(p) empty. The two algebraic forms of zeta are
/// evaluated independently and must agree to round-off, else
/// InternalInconsistency.
Derived derived(const Params& p);

enum class CalibrationMode { con1, transversality, explicit_c0 };

const char* calibration_mode_name(CalibrationMode m);

/// Initial constants. z0 is always u0*h0/k0 (the closed forms are only
/// mutually consistent for that choice; the ODE oracle detects any other).
/// c1 and f_star are derived from c0.
struct Calibration {
  double k0, h0, u0;
  double c0;
  double z0;
  double c1;      // costate scale, mu(0)
  double f_star;  // k0 * z0^{(sigma-beta)/sigma} / c0
  CalibrationMode mode;
  double condition_residual;  // relative imbalance of the con1 equation at c0
};

/// c0 from the algebraic condition linking initial consumption to
/// (k0, h0, u0) (the condition under which the two families' h and u
/// coincide). Throws NonPositiveC0 when the algebra yields c0 <= 0.
Calibration calibrate_con1(const Params& p, double k0, double h0, double u0);

/// c0 from the limit condition lim F = F*: c0 = k0 z0^{(sigma-beta)/sigma}
/// / F_infinity. F_infinity does not depend on c0, so this is explicit.
Calibration calibrate_transversality(const Params& p, double k0, double h0, double u0,
                                     const Tolerance& tol);

/// User-supplied c0; the con1 residual is recorded, not enforced.
Calibration calibrate_explicit(const Params& p, double k0, double h0, double u0, double c0);

/// Balanced-growth-path initials for a given k0: u0 = zeta/delta and
/// h0 = z* k0 / u0, so z0 = z* and both calibrations coincide at
/// c0 = eta * k0.
struct Initials {
  double k0, h0, u0;
};
Initials bgp_initials(const Params& p, double k0);

/// Closed-form relaxation path z(t); z(t)^{beta-1} decays exponentially
/// from z0^{beta-1} to z*^{beta-1} at relax_rate.
double z_path(const Params& p, double z0, double t);

/// Kernel parameters for z(t)^{pow_z} * exp(-decay * t); the building
/// block behind z_path and both integrands.
kernels::BlendPowExp z_power_kernel(const Params& p, double z0, double pow_z, double decay);

double F_of_t(const Params& p, const Calibration& cal, double t, const Tolerance& tol);
double F_infinity(const Params& p, const Calibration& cal, const Tolerance& tol);
double G_of_t(const Params& p, const Calibration& cal, double t, const Tolerance& tol);

/// F (and G) accumulated over a grid in one pass.
std::vector<double> F_prefix(const Params& p, const Calibration& cal,
                             std::span<const double> points, const Tolerance& tol);
std::vector<double> G_prefix(const Params& p, const Calibration& cal,
                             std::span<const double> points, const Tolerance& tol);

/// Two-first-integral family. Requires the calibration to satisfy con1 to
/// 1e-8 relative (Con1Violated otherwise). DomainError on non-finite
/// intermediates, DenominatorVanished if the u denominator crosses zero.
TrajectoryPoint eval_family_two_integrals(const Params& p, const Calibration& cal, double t,
                                          const Tolerance& tol);

/// One-first-integral family (uses G as well as F). Intended for
/// transversality calibrations; evaluates the printed expressions for any
/// calibration.
TrajectoryPoint eval_family_one_integral(const Params& p, const Calibration& cal, double t,
                                         const Tolerance& tol);

/// Whole-grid evaluation with F/G accumulated once per grid.
std::vector<TrajectoryPoint> eval_family_grid(const Params& p, const Calibration& cal,
                                              FamilyTag family, const TimeGrid& grid,
                                              const Tolerance& tol);

// Low-level point evaluation from precomputed z(t), F(t) (and G(t) for the
// one-integral family). No condition check; report builders that batch the
// integrals themselves use these.
TrajectoryPoint family_point_a(const Params& p, const Derived& d, const Calibration& cal,
                               double t, double z, double F);
TrajectoryPoint family_point_b(const Params& p, const Derived& d, const Calibration& cal,
                               double t, double z, double F, double G);

/// Consumption and both costates at one point; shared verbatim by the two
/// families (only h and u differ between them).
struct CorePoint {
  double c, lambda, mu;
};
CorePoint consumption_costates(const Params& p, const Calibration& cal, double t, double z);

/// Detection of the special parameter restriction
/// sigma = beta(rho+pi) / (2 pi beta - delta + delta beta - pi)
/// (requires a positive denominator). Diagnostic only.
struct RestrictionCheck {
  bool matches;
  double residual;     // sigma - formula value (signed)
  double denominator;  // 2 pi beta - delta + delta beta - pi
};
RestrictionCheck detect_naz2016_restriction(const Params& p);

/// Relative imbalance of the con1 condition for a given calibration.
double con1_residual(const Params& p, double k0, double u0, double z0, double c0);

}  // namespace lucaslab::crra
