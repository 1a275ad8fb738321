#include "lucaslab/log_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lucaslab/quadrature.hpp"

namespace lucaslab::logm {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void require_valid(const Params& p) {
  auto v = validate_params(p);
  if (!v.empty()) {
    std::string msg = "invalid log-model parameters:";
    for (const auto& c : v) msg += " [" + c.name + "]";
    throw DomainError(msg);
  }
}

void require_initials(double k0, double h0, double u0) {
  if (!(k0 > 0) || !(h0 > 0)) throw DomainError("initial capital stocks must be positive");
  if (!(u0 > 0) || !(u0 <= 1)) throw DomainError("u0 must lie in (0, 1]");
}

double pos_pow(double base, double e, const char* what) {
  if (!(base > 0)) throw DomainError(std::string(what) + " must be positive before exponentiation");
  return std::pow(base, e);
}

BatchIntegrand kernel_integrand(const kernels::BlendPowExp& k) {
  return [k](std::span<const double> s, std::span<double> out) {
    kernels::blend_pow_exp(k, s, out);
  };
}

struct Common {
  double z, F, E;
  double czb;         // c0 * z0^beta
  double exp_growth;  // e^{(delta/beta) t}
  double c, k, lambda, mu;
};

Common common_point(const Params& p, const Derived& d, const Calibration& cal, double t,
                    double z, double F) {
  Common cm;
  cm.z = z;
  cm.F = F;
  cm.E = cal.f_star - F;
  cm.czb = cal.c0 * pos_pow(cal.z0, p.beta, "z0");
  cm.exp_growth = std::exp(d.growth_exp * t);
  cm.c = cm.czb * std::exp((p.delta - p.rho) * t) * pos_pow(z, -p.beta, "z");
  cm.k = cm.czb / z * cm.exp_growth * cm.E;
  cm.lambda = std::exp((p.rho - p.delta) * t) * std::pow(z, p.beta) / cm.czb;
  cm.mu = cal.mu0 * std::exp((p.rho - p.delta) * t);
  return cm;
}

void require_conn1(const Params& p, const Calibration& cal) {
  const double res = conn1_residual(p, cal.k0, cal.u0, cal.z0, cal.c0);
  if (!(res <= 1e-8))
    throw Conn1Violated("log family a needs a conn1 calibration (relative residual " +
                        fmt(res) + ")");
}

Calibration finish_calibration(const Params& p, double k0, double h0, double u0, double c0,
                               CalibrationMode mode) {
  if (!(c0 > 0) || !std::isfinite(c0))
    throw NonPositiveC0("calibration produced non-positive c0 = " + fmt(c0));
  Calibration cal;
  cal.k0 = k0;
  cal.h0 = h0;
  cal.u0 = u0;
  cal.z0 = u0 * h0 / k0;
  cal.c0 = c0;
  cal.mu0 = p.A * (1.0 - p.beta) / (p.delta * pos_pow(cal.z0, p.beta, "z0") * c0);
  cal.f_star = k0 * pos_pow(cal.z0, 1.0 - p.beta, "z0") / c0;
  cal.mode = mode;
  cal.condition_residual = conn1_residual(p, k0, u0, cal.z0, c0);
  return cal;
}

}  // namespace

std::vector<ConstraintViolation> validate_params(const Params& p) {
  std::vector<ConstraintViolation> v;
  auto bad = [&](const char* name, const std::string& detail) {
    v.push_back({name, detail});
  };
  if (!(p.rho > 0)) bad("rho > 0", "rho = " + fmt(p.rho));
  if (!(p.beta > 0 && p.beta < 1)) bad("0 < beta < 1", "beta = " + fmt(p.beta));
  if (!(p.A > 0)) bad("A > 0", "A = " + fmt(p.A));
  if (!(p.delta > 0)) bad("delta > 0", "delta = " + fmt(p.delta));
  if (!v.empty()) return v;
  // holds automatically given the above; asserted because the F integrand
  // decays at this rate
  const double eta = p.rho + p.delta / p.beta - p.delta;
  if (!(eta > 0)) bad("rho + delta/beta - delta > 0", "eta = " + fmt(eta));
  return v;
}

Derived derived(const Params& p) {
  require_valid(p);
  Derived d;
  const double zsb1 = p.beta * p.A / p.delta;  // z*^{beta-1}, exact
  d.z_star = std::pow(zsb1, 1.0 / (p.beta - 1.0));
  d.relax_rate = (1.0 - p.beta) * p.delta / p.beta;
  d.eta = p.rho + p.delta / p.beta - p.delta;
  d.zeta = p.rho;
  d.growth_exp = p.delta / p.beta;
  if (std::abs((d.eta - d.relax_rate) - d.zeta) > 1e-12 * std::max(1.0, d.zeta))
    throw InternalInconsistency("log-model decay rates disagree");
  return d;
}

const char* calibration_mode_name(CalibrationMode m) {
  switch (m) {
    case CalibrationMode::conn1: return "conn1";
    case CalibrationMode::transversality: return "transversality";
    case CalibrationMode::explicit_c0: return "explicit-c0";
  }
  return "?";
}

double conn1_residual(const Params& p, double k0, double u0, double z0, double c0) {
  const double lhs =
      p.delta * u0 * std::pow(z0, p.beta) / (p.A * (1.0 - p.beta) * k0 * z0);
  const double slack = c0 - p.rho * k0;
  if (slack == 0.0) return std::numeric_limits<double>::infinity();
  const double rhs = p.rho / slack;
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

TrajectoryPoint family_point_a(const Params& p, const Derived& d, const Calibration& cal,
                               double t, double z, double F) {
  const Common cm = common_point(p, d, cal, t, z, F);
  const double zb1 = std::pow(z, p.beta - 1.0);
  const double slack = cal.c0 - p.rho * cal.k0;
  if (slack == 0.0) throw DenominatorVanished(t);

  const double h = p.rho * cal.c0 * cal.h0 / slack *
                   (std::exp(-(p.rho - p.delta) * t) / p.rho - zb1 * cm.exp_growth * cm.E);
  const double u_den =
      cal.k0 * (std::exp((p.delta - p.rho - d.growth_exp) * t) - p.rho * zb1 * cm.E);
  if (u_den == 0.0) throw DenominatorVanished(t);
  const double u =
      cal.u0 * std::pow(cal.z0, p.beta - 1.0) * slack * cm.E / u_den;

  TrajectoryPoint tp{t, cm.c, cm.k, h, u, cm.lambda, cm.mu};
  if (!std::isfinite(tp.c) || !std::isfinite(tp.k) || !std::isfinite(tp.h) ||
      !std::isfinite(tp.u) || !std::isfinite(tp.lambda) || !std::isfinite(tp.mu))
    throw DomainError("log family a: non-finite value at t=" + fmt(t));
  return tp;
}

TrajectoryPoint family_point_b(const Params& p, const Derived& d, const Calibration& cal,
                               double t, double z, double F, double G) {
  const Common cm = common_point(p, d, cal, t, z, F);
  const double du0 = p.delta * cal.u0;
  const double bracket =
      ((d.relax_rate + du0) * cal.f_star - du0 * G) * std::exp(-d.relax_rate * t) - du0 * cm.E;
  if (bracket == 0.0) throw DenominatorVanished(t);

  const double h = bracket * cal.h0 * cal.c0 /
                   (cal.k0 * pos_pow(cal.z0, 1.0 - p.beta, "z0") * d.relax_rate) *
                   cm.exp_growth;
  const double u = d.relax_rate * cal.u0 * cm.E / bracket;

  TrajectoryPoint tp{t, cm.c, cm.k, h, u, cm.lambda, cm.mu};
  if (!std::isfinite(tp.c) || !std::isfinite(tp.k) || !std::isfinite(tp.h) ||
      !std::isfinite(tp.u) || !std::isfinite(tp.lambda) || !std::isfinite(tp.mu))
    throw DomainError("log family b: non-finite value at t=" + fmt(t));
  return tp;
}

CorePoint consumption_costates(const Params& p, const Calibration& cal, double t, double z) {
  const Derived d = derived(p);
  const Common cm = common_point(p, d, cal, t, z, 0.0);
  return {cm.c, cm.lambda, cm.mu};
}

Calibration calibrate_conn1(const Params& p, double k0, double h0, double u0) {
  require_valid(p);
  require_initials(k0, h0, u0);
  const double z0 = u0 * h0 / k0;
  const double c0 = p.rho * k0 + p.rho * p.A * (1.0 - p.beta) * k0 *
                                     pos_pow(z0, 1.0 - p.beta, "z0") / (p.delta * u0);
  return finish_calibration(p, k0, h0, u0, c0, CalibrationMode::conn1);
}

Calibration calibrate_transversality(const Params& p, double k0, double h0, double u0,
                                     const Tolerance& tol) {
  require_valid(p);
  require_initials(k0, h0, u0);
  const double z0 = u0 * h0 / k0;
  const Derived d = derived(p);
  const kernels::BlendPowExp k = z_power_kernel(p, z0, 1.0 - p.beta, d.eta);
  const double env =
      std::max(pos_pow(z0, 1.0 - p.beta, "z0"), pos_pow(d.z_star, 1.0 - p.beta, "z*"));
  const double finf = integrate_tail(kernel_integrand(k), 0.0, d.eta, env, tol);
  const double c0 = k0 * pos_pow(z0, 1.0 - p.beta, "z0") / finf;
  return finish_calibration(p, k0, h0, u0, c0, CalibrationMode::transversality);
}

Calibration calibrate_explicit(const Params& p, double k0, double h0, double u0, double c0) {
  require_valid(p);
  require_initials(k0, h0, u0);
  return finish_calibration(p, k0, h0, u0, c0, CalibrationMode::explicit_c0);
}

Initials bgp_initials(const Params& p, double k0) {
  const Derived d = derived(p);
  if (!(k0 > 0)) throw DomainError("k0 must be positive");
  if (!(p.rho < p.delta))
    throw DomainError("balanced growth path needs rho < delta (u0 = rho/delta otherwise > 1)");
  Initials ini;
  ini.k0 = k0;
  ini.u0 = p.rho / p.delta;
  ini.h0 = d.z_star * k0 / ini.u0;
  return ini;
}

kernels::BlendPowExp z_power_kernel(const Params& p, double z0, double pow_z, double decay) {
  const Derived d = derived(p);
  if (!(z0 > 0)) throw DomainError("z0 must be positive");
  kernels::BlendPowExp k;
  k.a = p.beta * p.A / p.delta;  // z*^{beta-1}
  k.b = std::pow(z0, p.beta - 1.0) - k.a;
  k.rate = d.relax_rate;
  k.pow = pow_z / (p.beta - 1.0);
  k.decay = decay;
  return k;
}

double z_path(const Params& p, double z0, double t) {
  const kernels::BlendPowExp k = z_power_kernel(p, z0, 1.0, 0.0);
  const double w = kernels::blend_pow_exp_one(k, t);
  if (!(w > 0)) throw DomainError("z relaxation bracket became non-positive");
  return std::pow(w, 1.0 / (p.beta - 1.0));
}

double F_of_t(const Params& p, const Calibration& cal, double t, const Tolerance& tol) {
  if (!(t >= 0)) throw DomainError("F(t) needs t >= 0");
  const Derived d = derived(p);
  const kernels::BlendPowExp k = z_power_kernel(p, cal.z0, 1.0 - p.beta, d.eta);
  return integrate_finite(kernel_integrand(k), 0.0, t, tol);
}

double F_infinity(const Params& p, const Calibration& cal, const Tolerance& tol) {
  const Derived d = derived(p);
  const kernels::BlendPowExp k = z_power_kernel(p, cal.z0, 1.0 - p.beta, d.eta);
  const double env = std::max(pos_pow(cal.z0, 1.0 - p.beta, "z0"),
                              pos_pow(d.z_star, 1.0 - p.beta, "z*"));
  return integrate_tail(kernel_integrand(k), 0.0, d.eta, env, tol);
}

double G_of_t(const Params& p, const Calibration& cal, double t, const Tolerance& tol) {
  if (!(t >= 0)) throw DomainError("G(t) needs t >= 0");
  const Derived d = derived(p);
  const kernels::BlendPowExp k = z_power_kernel(p, cal.z0, 1.0 - p.beta, d.zeta);
  return integrate_finite(kernel_integrand(k), 0.0, t, tol);
}

std::vector<double> F_prefix(const Params& p, const Calibration& cal,
                             std::span<const double> points, const Tolerance& tol) {
  const Derived d = derived(p);
  const kernels::BlendPowExp k = z_power_kernel(p, cal.z0, 1.0 - p.beta, d.eta);
  return prefix_integrals(kernel_integrand(k), 0.0, points, tol);
}

std::vector<double> G_prefix(const Params& p, const Calibration& cal,
                             std::span<const double> points, const Tolerance& tol) {
  const Derived d = derived(p);
  const kernels::BlendPowExp k = z_power_kernel(p, cal.z0, 1.0 - p.beta, d.zeta);
  return prefix_integrals(kernel_integrand(k), 0.0, points, tol);
}

TrajectoryPoint eval_family_a(const Params& p, const Calibration& cal, double t,
                              const Tolerance& tol) {
  if (!(t >= 0)) throw DomainError("trajectory time must be >= 0");
  const Derived d = derived(p);
  require_conn1(p, cal);
  return family_point_a(p, d, cal, t, z_path(p, cal.z0, t), F_of_t(p, cal, t, tol));
}

TrajectoryPoint eval_family_b(const Params& p, const Calibration& cal, double t,
                              const Tolerance& tol) {
  if (!(t >= 0)) throw DomainError("trajectory time must be >= 0");
  const Derived d = derived(p);
  return family_point_b(p, d, cal, t, z_path(p, cal.z0, t), F_of_t(p, cal, t, tol),
                        G_of_t(p, cal, t, tol));
}

std::vector<TrajectoryPoint> eval_family_grid(const Params& p, const Calibration& cal,
                                              FamilyTag family, const TimeGrid& grid,
                                              const Tolerance& tol) {
  grid.validate();
  if (!(grid.t_start() >= 0)) throw DomainError("trajectory grid must start at t >= 0");
  const Derived d = derived(p);
  if (family == FamilyTag::a) require_conn1(p, cal);

  const auto& pts = grid.points;
  const std::vector<double> F = F_prefix(p, cal, pts, tol);
  std::vector<double> G;
  if (family == FamilyTag::b) G = G_prefix(p, cal, pts, tol);

  std::vector<TrajectoryPoint> out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double z = z_path(p, cal.z0, pts[i]);
    out.push_back(family == FamilyTag::a
                      ? family_point_a(p, d, cal, pts[i], z, F[i])
                      : family_point_b(p, d, cal, pts[i], z, F[i], G[i]));
  }
  return out;
}

}  // namespace lucaslab::logm
