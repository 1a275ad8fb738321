#pragma once

#include <vector>

#include "lucaslab/crra.hpp"
#include "lucaslab/log_model.hpp"
#include "lucaslab/time_grid.hpp"
#include "lucaslab/tolerance.hpp"
#include "lucaslab/trajectory.hpp"

namespace lucaslab::equivalence {

struct Deviation {
  double max_abs = 0.0;
  double max_rel = 0.0;
  double argmax_t = 0.0;  // location of the absolute-deviation maximum
};

/// Residual curve of the conjectured identity: quadrature G(t) on the left,
/// the G-from-F reconstruction on the right. The identity is measured, not
/// assumed; deviations are the experiment's output.
struct IdentityReport {
  ModelTag model;
  TimeGrid grid;
  std::vector<double> lhs;  // G by quadrature
  std::vector<double> rhs;  // G reconstructed from F
  Deviation dev;            // rel uses max(|lhs|,|rhs|,1e-300) as denominator
  double condition_residual;  // how well con1/conn1 holds for this calibration
  int failed_points = 0;      // entries marked NaN after evaluation errors
};

/// The G-from-F expression for the CRRA model at one time. The calibration
/// is expected to satisfy con1; its residual is recorded by callers, never
/// enforced here (off-condition behavior is part of the experiment).
double g_from_f_crra(const crra::Params& p, const crra::Calibration& cal, double t,
                     const Tolerance& tol);

/// Same for the log-utility model (conn1 condition).
double g_from_f_log(const logm::Params& p, const logm::Calibration& cal, double t,
                    const Tolerance& tol);

IdentityReport check_identity(const crra::Params& p, const crra::Calibration& cal,
                              const TimeGrid& grid, const Tolerance& tol);
IdentityReport check_identity(const logm::Params& p, const logm::Calibration& cal,
                              const TimeGrid& grid, const Tolerance& tol);

/// Trajectory-level mirror of check_identity: pointwise deviation of h and
/// u between the two families under one shared calibration.
struct FamilyComparison {
  ModelTag model;
  TimeGrid grid;
  std::vector<double> h_a, h_b, u_a, u_b;
  Deviation h_dev, u_dev;  // relative, denominator max(|a|,|b|,1e-300)
  double condition_residual;
  int failed_points = 0;
  // Measured amplification: max relative (h,u) deviation per unit of
  // identity absolute deviation. Reported, not asserted.
  double amplification = 0.0;
};

FamilyComparison compare_families(const crra::Params& p, const crra::Calibration& cal,
                                  const TimeGrid& grid, const Tolerance& tol);
FamilyComparison compare_families(const logm::Params& p, const logm::Calibration& cal,
                                  const TimeGrid& grid, const Tolerance& tol);

}  // namespace lucaslab::equivalence
