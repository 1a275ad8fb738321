#include "lucaslab/kernels.hpp"

#include <array>
#include <atomic>

namespace lucaslab::kernels {

namespace {

#if defined(__x86_64__) || defined(_M_X64)
constexpr std::array<Variant, 2> kCompiled = {Variant::scalar, Variant::avx2};
#else
constexpr std::array<Variant, 1> kCompiled = {Variant::scalar};
#endif

Variant detect_widest() {
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_supports(Variant::avx2)) return Variant::avx2;
#endif
  return Variant::scalar;
}

std::atomic<Variant> g_active{detect_widest()};

}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::scalar: return "scalar";
    case Variant::avx2: return "avx2";
  }
  return "?";
}

std::span<const Variant> compiled_variants() { return kCompiled; }

bool cpu_supports(Variant v) {
  if (v == Variant::scalar) return true;
#if defined(__x86_64__) || defined(_M_X64)
  if (v == Variant::avx2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#endif
  return false;
}

Variant active_variant() { return g_active.load(std::memory_order_relaxed); }

void set_active_variant(Variant v) { g_active.store(v, std::memory_order_relaxed); }

bool select_variant(std::string_view name) {
  if (name == "auto") {
    set_active_variant(detect_widest());
    return true;
  }
  for (Variant v : kCompiled) {
    if (name == variant_name(v)) {
      if (!cpu_supports(v)) return false;
      set_active_variant(v);
      return true;
    }
  }
  return false;
}

void blend_pow_exp(const BlendPowExp& k, std::span<const double> t, std::span<double> out) {
  switch (active_variant()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Variant::avx2:
      blend_pow_exp_avx2(k, t.data(), out.data(), t.size());
      return;
#endif
    default:
      blend_pow_exp_scalar(k, t.data(), out.data(), t.size());
      return;
  }
}

double blend_pow_exp_one(const BlendPowExp& k, double t) {
  double out;
  blend_pow_exp(k, {&t, 1}, {&out, 1});
  return out;
}

}  // namespace lucaslab::kernels
