#include "lucaslab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace lucaslab {

namespace {

// 7-point Gauss / 15-point Kronrod pair (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUflow = std::numeric_limits<double>::min();

struct Segment {
  double a, b;
  double value, error;
  bool splittable;
};

}  // namespace

BatchIntegrand batch_from_scalar(std::function<double(double)> f) {
  return [f = std::move(f)](std::span<const double> s, std::span<double> out) {
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = f(s[i]);
  };
}

PanelResult kronrod15(const BatchIntegrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  // nodes: center, then +-xgk pairs
  double s[15], fv[15];
  s[0] = center;
  for (int j = 0; j < 7; ++j) {
    s[1 + 2 * j] = center - hlgth * kXgk[j];
    s[2 + 2 * j] = center + hlgth * kXgk[j];
  }
  f(std::span<const double>(s, 15), std::span<double>(fv, 15));
  for (int i = 0; i < 15; ++i)
    if (!std::isfinite(fv[i])) throw NonFiniteIntegrand(s[i]);

  double resk = kWgk[7] * fv[0];
  double resabs = std::abs(resk);
  double resg = kWg[3] * fv[0];
  for (int j = 0; j < 7; ++j) {
    const double fsum = fv[1 + 2 * j] + fv[2 + 2 * j];
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::abs(fv[1 + 2 * j]) + std::abs(fv[2 + 2 * j]));
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;  // xgk odd indices are the Gauss nodes
  }

  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fv[0] - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[1 + 2 * j] - reskh) + std::abs(fv[2 + 2 * j] - reskh));

  const double dhlgth = std::abs(hlgth);
  double abserr = std::abs((resk - resg) * hlgth);
  resasc *= dhlgth;
  resabs *= dhlgth;
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  if (resabs > kUflow / (50.0 * kEps)) abserr = std::max(kEps * 50.0 * resabs, abserr);

  return {resk * hlgth, resabs, abserr};
}

double integrate_finite(const BatchIntegrand& f, double a, double b, const Tolerance& tol) {
  tol.validate();
  if (!(a <= b)) throw DomainError("integrate_finite: need a <= b");
  if (a == b) return 0.0;

  std::vector<Segment> segs;
  segs.reserve(64);
  {
    PanelResult r = kronrod15(f, a, b);
    segs.push_back({a, b, r.value, r.error, true});
  }

  // worst-error-first refinement; ties broken by segment index so the
  // subdivision sequence is fully deterministic
  auto cmp = [&](std::size_t i, std::size_t j) {
    if (segs[i].error != segs[j].error) return segs[i].error < segs[j].error;
    return i > j;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> worst(cmp);
  worst.push(0);

  double total_value = segs[0].value;
  double total_error = segs[0].error;
  int splits = 0;

  while (true) {
    const double target = std::max(tol.abs_tol, tol.rel_tol * std::abs(total_value));
    if (total_error <= target) break;
    if (splits >= tol.max_subdivisions)
      throw NonConvergence("integrate_finite: error estimate above tolerance after " +
                           std::to_string(splits) + " subdivisions");

    while (!worst.empty() && !segs[worst.top()].splittable) worst.pop();
    if (worst.empty())
      throw NonConvergence("integrate_finite: intervals no longer splittable at tolerance");
    const std::size_t idx = worst.top();
    worst.pop();

    Segment& sg = segs[idx];
    const double mid = 0.5 * (sg.a + sg.b);
    if (!(mid > sg.a && mid < sg.b)) {
      sg.splittable = false;  // interval at round-off resolution
      continue;
    }
    ++splits;
    PanelResult left = kronrod15(f, sg.a, mid);
    PanelResult right = kronrod15(f, mid, sg.b);
    total_value += left.value + right.value - sg.value;
    total_error += left.error + right.error - sg.error;
    const double old_b = sg.b;
    sg.b = mid;
    sg.value = left.value;
    sg.error = left.error;
    segs.push_back({mid, old_b, right.value, right.error, true});
    worst.push(idx);
    worst.push(segs.size() - 1);
  }

  // stable final sum, independent of the split history
  std::sort(segs.begin(), segs.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  double result = 0.0;
  for (const Segment& sg : segs) result += sg.value;
  return result;
}

double integrate_tail(const BatchIntegrand& f, double a, double decay_rate,
                      double bound_coeff, const Tolerance& tol) {
  tol.validate();
  if (!(decay_rate > 0.0) || !std::isfinite(decay_rate))
    throw InvalidEnvelope("integrate_tail: decay_rate must be positive");
  if (!(bound_coeff > 0.0) || !std::isfinite(bound_coeff))
    throw InvalidEnvelope("integrate_tail: bound_coeff must be positive");

  // Truncate where the remaining envelope mass drops below the absolute
  // tolerance (scaled by the envelope's own integral when abs_tol is 0).
  double cut = tol.abs_tol;
  if (cut == 0.0) cut = tol.rel_tol * bound_coeff * std::exp(-decay_rate * a) / decay_rate;
  const double mass = bound_coeff / decay_rate;
  double T = std::log(std::max(mass / cut, 1.0)) / decay_rate;
  T = a + std::max(T, 1.0 / decay_rate);
  return integrate_finite(f, a, T, tol);
}

std::vector<double> prefix_integrals(const BatchIntegrand& f, double base,
                                     std::span<const double> points, const Tolerance& tol) {
  std::vector<double> out(points.size());
  if (points.empty()) return out;
  if (!(base <= points[0])) throw DomainError("prefix_integrals: base must precede points");
  double acc = integrate_finite(f, base, points[0], tol);
  out[0] = acc;
  for (std::size_t i = 1; i < points.size(); ++i) {
    acc += integrate_finite(f, points[i - 1], points[i], tol);
    out[i] = acc;
  }
  return out;
}

RunningIntegral::RunningIntegral(BatchIntegrand f, double base, const Tolerance& tol)
    : f_(std::move(f)), tol_(tol) {
  ts_.push_back(base);
  vals_.push_back(0.0);
}

double RunningIntegral::operator()(double t) {
  if (t < ts_.front()) throw DomainError("RunningIntegral: query precedes the base point");
  auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
  const std::size_t i = std::size_t(it - ts_.begin()) - 1;
  const double gap = integrate_finite(f_, ts_[i], t, tol_);
  const double val = vals_[i] + gap;
  if (i + 1 == ts_.size() && t > ts_.back()) {
    ts_.push_back(t);
    vals_.push_back(val);
  }
  return val;
}

}  // namespace lucaslab
