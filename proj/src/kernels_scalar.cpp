#include "lucaslab/kernels.hpp"

#include <cmath>

namespace lucaslab::kernels {

// Reference implementation. The SIMD variants follow the same algebraic
// form (single exp of pow*log(w) - decay*t) so that they differ from this
// one only by the rounding of exp/log, not by the evaluation order.
void blend_pow_exp_scalar(const BlendPowExp& k, const double* t, double* out, std::size_t n) {
  if (k.pow == 1.0 && k.decay == 0.0) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = k.a + k.b * std::exp(-k.rate * t[i]);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double w = k.a + k.b * std::exp(-k.rate * t[i]);
    out[i] = std::exp(k.pow * std::log(w) - k.decay * t[i]);
  }
}

}  // namespace lucaslab::kernels
