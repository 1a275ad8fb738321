#include "lucaslab/crra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lucaslab/quadrature.hpp"

namespace lucaslab::crra {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void require_valid(const Params& p) {
  auto v = validate_params(p);
  if (!v.empty()) {
    std::string msg = "invalid crra parameters:";
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

// Everything famA/famB share at one time point.
struct Common {
  double z, F, E;     // E = f_star - F(t)
  double cz;          // c0 * z0^{beta/sigma}
  double exp_growth;  // e^{growth_exp * t}
  double exp_cons;    // e^{-(rho-delta)t/sigma}
  double c, k, lambda, mu;
};

Common common_point(const Params& p, const Derived& d, const Calibration& cal, double t,
                    double z, double F) {
  Common cm;
  cm.z = z;
  cm.F = F;
  cm.E = cal.f_star - F;
  cm.cz = cal.c0 * pos_pow(cal.z0, p.beta / p.sigma, "z0");
  cm.exp_growth = std::exp(d.growth_exp * t);
  cm.exp_cons = std::exp(-(p.rho - p.delta) / p.sigma * t);
  cm.c = cm.cz * cm.exp_cons * pos_pow(z, -p.beta / p.sigma, "z");
  cm.k = cm.E * cm.cz / z * cm.exp_growth;
  cm.lambda = pos_pow(cal.c0, -p.sigma, "c0") * pos_pow(cal.z0, -p.beta, "z0") *
              std::exp((p.rho - p.delta) * t) * std::pow(z, p.beta);
  cm.mu = cal.c1 * std::exp((p.rho - p.delta) * t);
  return cm;
}

void require_con1(const Params& p, const Calibration& cal) {
  const double res = con1_residual(p, cal.k0, cal.u0, cal.z0, cal.c0);
  if (!(res <= 1e-8))
    throw Con1Violated("two-integral family needs a con1 calibration (relative residual " +
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
  const double czb = c0 * pos_pow(cal.z0, p.beta / p.sigma, "z0");
  cal.c1 = (1.0 - p.beta) * p.gamma / p.delta * std::pow(czb, -p.sigma);
  cal.f_star = k0 * pos_pow(cal.z0, (p.sigma - p.beta) / p.sigma, "z0") / c0;
  cal.mode = mode;
  cal.condition_residual = con1_residual(p, k0, u0, cal.z0, c0);
  return cal;
}

}  // namespace

std::vector<ConstraintViolation> validate_params(const Params& p) {
  std::vector<ConstraintViolation> v;
  auto bad = [&](const char* name, const std::string& detail) {
    v.push_back({name, detail});
  };
  if (!(p.sigma > 0)) bad("sigma > 0", "sigma = " + fmt(p.sigma));
  if (p.sigma == 1.0) bad("sigma != 1", "sigma = 1 needs the log-utility model");
  if (!(p.rho > 0)) bad("rho > 0", "rho = " + fmt(p.rho));
  if (!(p.beta > 0 && p.beta < 1)) bad("0 < beta < 1", "beta = " + fmt(p.beta));
  if (!(p.gamma > 0)) bad("gamma > 0", "gamma = " + fmt(p.gamma));
  if (!(p.pi >= 0)) bad("pi >= 0", "pi = " + fmt(p.pi));
  if (!(p.delta > 0)) bad("delta > 0", "delta = " + fmt(p.delta));
  if (!v.empty()) return v;  // derived expressions below need the basics

  if (!(p.rho < p.delta)) bad("rho < delta", fmt(p.rho) + " !< " + fmt(p.delta));
  if (!(p.delta < p.rho + p.delta * p.sigma))
    bad("delta < rho + delta*sigma", fmt(p.delta) + " !< " + fmt(p.rho + p.delta * p.sigma));
  const double eta = (p.delta + p.pi - p.pi * p.beta) / p.beta - (p.delta - p.rho) / p.sigma;
  if (!(eta > 0)) bad("eta > 0", "eta = " + fmt(eta));
  return v;
}

Derived derived(const Params& p) {
  require_valid(p);
  Derived d;
  const double zsb1 = p.beta * p.gamma / (p.delta + p.pi);  // z*^{beta-1}, exact
  d.z_star = std::pow(zsb1, 1.0 / (p.beta - 1.0));
  d.relax_rate = (1.0 - p.beta) * (p.delta + p.pi) / p.beta;
  d.eta = (p.delta + p.pi - p.pi * p.beta) / p.beta - (p.delta - p.rho) / p.sigma;
  d.growth_exp = (p.delta + p.pi - p.pi * p.beta) / p.beta;
  d.p_exp = (p.sigma - p.beta) / p.sigma;

  const double zeta_a = d.eta - d.relax_rate;
  const double zeta_b = (p.delta * p.sigma - p.delta + p.rho) / p.sigma;
  if (std::abs(zeta_a - zeta_b) > 1e-12 * std::max(1.0, std::abs(zeta_b)))
    throw InternalInconsistency("the two zeta forms disagree: " + fmt(zeta_a) + " vs " +
                                fmt(zeta_b));
  d.zeta = zeta_b;
  return d;
}

const char* calibration_mode_name(CalibrationMode m) {
  switch (m) {
    case CalibrationMode::con1: return "con1";
    case CalibrationMode::transversality: return "transversality";
    case CalibrationMode::explicit_c0: return "explicit-c0";
  }
  return "?";
}

double con1_residual(const Params& p, double k0, double u0, double z0, double c0) {
  const double z0b1 = std::pow(z0, p.beta - 1.0);
  const double lhs = p.gamma * (1.0 - p.beta) * (p.rho - p.delta + p.delta * p.sigma) / p.delta;
  const double D = p.sigma * c0 * z0b1 - (p.rho + p.pi - p.pi * p.sigma) * k0 * z0b1 +
                   p.beta * p.gamma * (1.0 - p.sigma) * k0;
  const double rhs = u0 / k0 * D;
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

TrajectoryPoint family_point_a(const Params& p, const Derived& d, const Calibration& cal,
                               double t, double z, double F) {
  const Common cm = common_point(p, d, cal, t, z, F);
  const double zb1 = std::pow(z, p.beta - 1.0);
  const double z0b1 = std::pow(cal.z0, p.beta - 1.0);
  const double D = p.sigma * cal.c0 * z0b1 - (p.rho + p.pi - p.pi * p.sigma) * cal.k0 * z0b1 +
                   p.beta * p.gamma * (1.0 - p.sigma) * cal.k0;
  const double brk = p.beta * p.gamma * (1.0 - p.sigma) - (p.rho + p.pi - p.pi * p.sigma) * zb1;
  const double zq = std::pow(z, p.beta - p.beta / p.sigma);

  if (D == 0.0) throw DenominatorVanished(t);
  const double h = cal.h0 / (cal.z0 * D) *
                   (p.sigma * cm.cz * cm.exp_cons * zq + brk * cm.E * cm.cz * cm.exp_growth);
  const double u_den = brk * cm.E + p.sigma * zq * std::exp(-d.eta * t);
  if (u_den == 0.0) throw DenominatorVanished(t);
  const double u = (cal.u0 / cal.k0) * D * cm.E / u_den;

  TrajectoryPoint tp{t, cm.c, cm.k, h, u, cm.lambda, cm.mu};
  if (!std::isfinite(tp.c) || !std::isfinite(tp.k) || !std::isfinite(tp.h) ||
      !std::isfinite(tp.u) || !std::isfinite(tp.lambda) || !std::isfinite(tp.mu))
    throw DomainError("two-integral family: non-finite value at t=" + fmt(t));
  return tp;
}

TrajectoryPoint family_point_b(const Params& p, const Derived& d, const Calibration& cal,
                               double t, double z, double F, double G) {
  const Common cm = common_point(p, d, cal, t, z, F);
  const double du0 = p.delta * cal.u0;
  const double bracket =
      ((d.relax_rate + du0) * cal.f_star - du0 * G) * std::exp(-d.relax_rate * t) - du0 * cm.E;
  if (bracket == 0.0) throw DenominatorVanished(t);

  const double h = bracket * cm.cz / (d.relax_rate * cal.u0) * cm.exp_growth;
  const double u = d.relax_rate * cal.u0 * cm.E / bracket;

  TrajectoryPoint tp{t, cm.c, cm.k, h, u, cm.lambda, cm.mu};
  if (!std::isfinite(tp.c) || !std::isfinite(tp.k) || !std::isfinite(tp.h) ||
      !std::isfinite(tp.u) || !std::isfinite(tp.lambda) || !std::isfinite(tp.mu))
    throw DomainError("one-integral family: non-finite value at t=" + fmt(t));
  return tp;
}

CorePoint consumption_costates(const Params& p, const Calibration& cal, double t, double z) {
  const Derived d = derived(p);
  const Common cm = common_point(p, d, cal, t, z, 0.0);
  return {cm.c, cm.lambda, cm.mu};
}

Calibration calibrate_con1(const Params& p, double k0, double h0, double u0) {
  require_valid(p);
  require_initials(k0, h0, u0);
  const double z0 = u0 * h0 / k0;
  const double z0b1 = pos_pow(z0, p.beta - 1.0, "z0");
  const double num = k0 * p.gamma * (1.0 - p.beta) * (p.rho - p.delta + p.delta * p.sigma) /
                         (p.delta * u0) +
                     (p.rho + p.pi - p.pi * p.sigma) * k0 * z0b1 -
                     p.beta * p.gamma * (1.0 - p.sigma) * k0;
  const double c0 = num / (p.sigma * z0b1);
  return finish_calibration(p, k0, h0, u0, c0, CalibrationMode::con1);
}

Calibration calibrate_transversality(const Params& p, double k0, double h0, double u0,
                                     const Tolerance& tol) {
  require_valid(p);
  require_initials(k0, h0, u0);
  const double z0 = u0 * h0 / k0;
  const double finf = [&] {
    const Derived d = derived(p);
    const kernels::BlendPowExp k = z_power_kernel(p, z0, d.p_exp, d.eta);
    const double env = std::max(pos_pow(z0, d.p_exp, "z0"), pos_pow(d.z_star, d.p_exp, "z*"));
    return integrate_tail(kernel_integrand(k), 0.0, d.eta, env, tol);
  }();
  const double c0 = k0 * pos_pow(z0, (p.sigma - p.beta) / p.sigma, "z0") / finf;
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
  Initials ini;
  ini.k0 = k0;
  ini.u0 = d.zeta / p.delta;  // in (0,1) whenever the parameter constraints hold
  ini.h0 = d.z_star * k0 / ini.u0;
  return ini;
}

kernels::BlendPowExp z_power_kernel(const Params& p, double z0, double pow_z, double decay) {
  const Derived d = derived(p);
  if (!(z0 > 0)) throw DomainError("z0 must be positive");
  kernels::BlendPowExp k;
  k.a = p.beta * p.gamma / (p.delta + p.pi);  // z*^{beta-1}
  k.b = std::pow(z0, p.beta - 1.0) - k.a;
  k.rate = d.relax_rate;
  k.pow = pow_z / (p.beta - 1.0);
  k.decay = decay;
  return k;
}

double z_path(const Params& p, double z0, double t) {
  const kernels::BlendPowExp k = z_power_kernel(p, z0, 1.0, 0.0);
  const double z = kernels::blend_pow_exp_one(k, t);
  if (!std::isfinite(z) || !(z > 0))
    throw DomainError("z relaxation bracket became non-positive");
  return z;
}

double F_of_t(const Params& p, const Calibration& cal, double t, const Tolerance& tol) {
  if (!(t >= 0)) throw DomainError("F(t) needs t >= 0");
  const Derived d = derived(p);
  const kernels::BlendPowExp k = z_power_kernel(p, cal.z0, d.p_exp, d.eta);
  return integrate_finite(kernel_integrand(k), 0.0, t, tol);
}

double F_infinity(const Params& p, const Calibration& cal, const Tolerance& tol) {
  const Derived d = derived(p);
  const kernels::BlendPowExp k = z_power_kernel(p, cal.z0, d.p_exp, d.eta);
  const double env =
      std::max(pos_pow(cal.z0, d.p_exp, "z0"), pos_pow(d.z_star, d.p_exp, "z*"));
  return integrate_tail(kernel_integrand(k), 0.0, d.eta, env, tol);
}

double G_of_t(const Params& p, const Calibration& cal, double t, const Tolerance& tol) {
  if (!(t >= 0)) throw DomainError("G(t) needs t >= 0");
  const Derived d = derived(p);
  const kernels::BlendPowExp k = z_power_kernel(p, cal.z0, d.p_exp, d.zeta);
  return integrate_finite(kernel_integrand(k), 0.0, t, tol);
}

std::vector<double> F_prefix(const Params& p, const Calibration& cal,
                             std::span<const double> points, const Tolerance& tol) {
  const Derived d = derived(p);
  const kernels::BlendPowExp k = z_power_kernel(p, cal.z0, d.p_exp, d.eta);
  return prefix_integrals(kernel_integrand(k), 0.0, points, tol);
}

std::vector<double> G_prefix(const Params& p, const Calibration& cal,
                             std::span<const double> points, const Tolerance& tol) {
  const Derived d = derived(p);
  const kernels::BlendPowExp k = z_power_kernel(p, cal.z0, d.p_exp, d.zeta);
  return prefix_integrals(kernel_integrand(k), 0.0, points, tol);
}

TrajectoryPoint eval_family_two_integrals(const Params& p, const Calibration& cal, double t,
                                          const Tolerance& tol) {
  if (!(t >= 0)) throw DomainError("trajectory time must be >= 0");
  const Derived d = derived(p);
  require_con1(p, cal);
  return family_point_a(p, d, cal, t, z_path(p, cal.z0, t), F_of_t(p, cal, t, tol));
}

TrajectoryPoint eval_family_one_integral(const Params& p, const Calibration& cal, double t,
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
  if (family == FamilyTag::a) require_con1(p, cal);

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

RestrictionCheck detect_naz2016_restriction(const Params& p) {
  RestrictionCheck rc;
  rc.denominator = 2.0 * p.pi * p.beta - p.delta + p.delta * p.beta - p.pi;
  if (rc.denominator == 0.0) {
    rc.matches = false;
    rc.residual = std::numeric_limits<double>::infinity();
    return rc;
  }
  const double sigma_special = p.beta * (p.rho + p.pi) / rc.denominator;
  rc.residual = p.sigma - sigma_special;
  rc.matches = rc.denominator > 0.0 &&
               std::abs(rc.residual) <= 1e-10 * std::max(1.0, std::abs(p.sigma));
  return rc;
}

}  // namespace lucaslab::crra
