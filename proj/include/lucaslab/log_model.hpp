#pragma once

#include <string>
#include <vector>

#include "lucaslab/diagnostics.hpp"
#include "lucaslab/kernels.hpp"
#include "lucaslab/time_grid.hpp"
#include "lucaslab/tolerance.hpp"
#include "lucaslab/trajectory.hpp"

namespace lucaslab::logm {

/// Lucas-Uzawa model with logarithmic utility. The production elasticity
/// is written beta throughout (the model statement calls it alpha; every
/// closed-form expression uses beta, so the code follows the expressions).
struct Params {
  double rho;    // discount rate
  double beta;   // capital elasticity, in (0,1)
  double A;      // goods-sector technology level
  double delta;  // education-sector technology level
};

using lucaslab::ConstraintViolation;

std::vector<ConstraintViolation> validate_params(const Params& p);

struct Derived {
  double z_star;      // steady state of z = u h / k
  double relax_rate;  // (1-beta) delta / beta
  double eta;         // rho + delta/beta - delta, decay of the F integrand
  double zeta;        // rho, decay of the G integrand (eta - relax_rate)
  double growth_exp;  // delta / beta
};

Derived derived(const Params& p);

enum class CalibrationMode { conn1, transversality, explicit_c0 };

const char* calibration_mode_name(CalibrationMode m);

struct Calibration {
  double k0, h0, u0;
  double c0;
  double z0;      // u0 * h0 / k0
  double mu0;     // A(1-beta) / (delta z0^beta c0), the costate scale
  double f_star;  // k0 * z0^{1-beta} / c0
  CalibrationMode mode;
  double condition_residual;  // relative imbalance of conn1 at c0
};

/// c0 from the algebraic condition; explicit inversion, always exceeds
/// rho * k0 for admissible inputs.
Calibration calibrate_conn1(const Params& p, double k0, double h0, double u0);

/// c0 from lim F = F*: c0 = k0 z0^{1-beta} / F_infinity.
Calibration calibrate_transversality(const Params& p, double k0, double h0, double u0,
                                     const Tolerance& tol);

Calibration calibrate_explicit(const Params& p, double k0, double h0, double u0, double c0);

struct Initials {
  double k0, h0, u0;
};

/// Balanced growth path: u0 = rho/delta (requires rho < delta to stay
/// inside (0,1]), h0 = z* k0/u0; both calibrations then give c0 = eta k0.
Initials bgp_initials(const Params& p, double k0);

double z_path(const Params& p, double z0, double t);
kernels::BlendPowExp z_power_kernel(const Params& p, double z0, double pow_z, double decay);

double F_of_t(const Params& p, const Calibration& cal, double t, const Tolerance& tol);
double F_infinity(const Params& p, const Calibration& cal, const Tolerance& tol);
double G_of_t(const Params& p, const Calibration& cal, double t, const Tolerance& tol);
std::vector<double> F_prefix(const Params& p, const Calibration& cal,
                             std::span<const double> points, const Tolerance& tol);
std::vector<double> G_prefix(const Params& p, const Calibration& cal,
                             std::span<const double> points, const Tolerance& tol);

/// First closed-form family; requires a conn1 calibration (1e-8 relative,
/// Conn1Violated otherwise).
TrajectoryPoint eval_family_a(const Params& p, const Calibration& cal, double t,
                              const Tolerance& tol);

/// Second family, built on F and G; intended for transversality
/// calibrations.
TrajectoryPoint eval_family_b(const Params& p, const Calibration& cal, double t,
                              const Tolerance& tol);

std::vector<TrajectoryPoint> eval_family_grid(const Params& p, const Calibration& cal,
                                              FamilyTag family, const TimeGrid& grid,
                                              const Tolerance& tol);

// Low-level point evaluation from precomputed z, F (and G); no condition
// check.
TrajectoryPoint family_point_a(const Params& p, const Derived& d, const Calibration& cal,
                               double t, double z, double F);
TrajectoryPoint family_point_b(const Params& p, const Derived& d, const Calibration& cal,
                               double t, double z, double F, double G);

struct CorePoint {
  double c, lambda, mu;
};
CorePoint consumption_costates(const Params& p, const Calibration& cal, double t, double z);

double conn1_residual(const Params& p, double k0, double u0, double z0, double c0);

}  // namespace lucaslab::logm
