#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace lucaslab::kernels {

// Batch evaluation of
//
//   out[i] = (a + b * exp(-rate * t[i]))^pow * exp(-decay * t[i])
//
// This is the arithmetic inner loop of the project: the relaxation path
// z(t) and every quadrature integrand are instances of it, because
// z(t)^q = w(t)^{q/(beta-1)} with w(t) = a + b e^{-rate t}.
//
// Domain: w(t) must stay positive; w <= 0 yields NaN, which callers treat
// as a domain failure. pow == 1 with decay == 0 passes w through unchanged
// in every variant.
struct BlendPowExp {
  double a;      // blend limit as t -> infinity
  double b;      // initial blend offset, w(0) = a + b
  double rate;   // blend relaxation rate, >= 0
  double pow;    // exponent applied to the blend
  double decay;  // additional exponential damping rate
};

enum class Variant { scalar, avx2 };

const char* variant_name(Variant v);

/// Variants compiled into this binary (scalar always first).
std::span<const Variant> compiled_variants();

/// True if the running CPU can execute the given variant.
bool cpu_supports(Variant v);

/// Variant used by blend_pow_exp(); process-wide, defaults to the widest
/// CPU-supported one.
Variant active_variant();
void set_active_variant(Variant v);

/// Accepts "auto", "scalar" or "avx2". Returns false for unknown names or
/// for a variant the CPU cannot run; "auto" never fails.
bool select_variant(std::string_view name);

/// Dispatched batch evaluation. out.size() must equal t.size().
void blend_pow_exp(const BlendPowExp& k, std::span<const double> t, std::span<double> out);

/// Single-point evaluation through the active variant.
double blend_pow_exp_one(const BlendPowExp& k, double t);

// Direct entry points; the equivalence tests compare these against each
// other. Results within one variant do not depend on batch size or
// alignment (the AVX2 tail is computed with the same vector math).
void blend_pow_exp_scalar(const BlendPowExp& k, const double* t, double* out, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
void blend_pow_exp_avx2(const BlendPowExp& k, const double* t, double* out, std::size_t n);
#endif

}  // namespace lucaslab::kernels
