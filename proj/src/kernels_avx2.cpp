// AVX2/FMA variant of the blend-pow-exp kernel. Compiled only on x86_64,
// with -mavx2 -mfma; callers must check cpu_supports(Variant::avx2).
//
// exp and log are evaluated in-register (Cody-Waite reduction + series),
// accurate to a few ulp against libm; the equivalence tests pin the bound.

#if defined(__x86_64__) || defined(_M_X64)

#include "lucaslab/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace lucaslab::kernels {

namespace {

const __m256d kOne = _mm256_set1_pd(1.0);

// exp(x) for finite |x| <= ~709; x > 709 -> inf, x < -708 -> 0, NaN -> NaN.
inline __m256d exp4(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d hi_cut = _mm256_set1_pd(709.0);
  const __m256d lo_cut = _mm256_set1_pd(-708.0);

  const __m256d too_big = _mm256_cmp_pd(x, hi_cut, _CMP_GT_OQ);
  const __m256d too_small = _mm256_cmp_pd(x, lo_cut, _CMP_LT_OQ);
  const __m256d is_nan = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);

  __m256d xc = _mm256_min_pd(_mm256_max_pd(x, lo_cut), hi_cut);
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, xc);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  // Taylor series of exp on |r| <= ln2/2; degree 13 keeps the truncation
  // below one ulp.
  __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, r, kOne);
  p = _mm256_fmadd_pd(p, r, kOne);

  // Scale by 2^n through the exponent bits; n stays in [-1021, 1024] after
  // clamping so the result is normal.
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i scaled =
      _mm256_add_epi64(_mm256_castpd_si256(p), _mm256_slli_epi64(n64, 52));
  __m256d res = _mm256_castsi256_pd(scaled);

  res = _mm256_blendv_pd(res, _mm256_setzero_pd(), too_small);
  res = _mm256_blendv_pd(res, _mm256_set1_pd(HUGE_VAL), too_big);
  res = _mm256_blendv_pd(res, x, is_nan);
  return res;
}

// log(x) for positive, finite, normal x; x <= 0 or NaN -> NaN.
inline __m256d log4(__m256d x) {
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
  const __m256d qnan = _mm256_set1_pd(__builtin_nan(""));

  const __m256d bad = _mm256_or_pd(_mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LE_OQ),
                                   _mm256_cmp_pd(x, x, _CMP_UNORD_Q));

  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
  // biased exponent (0..2046) to double via the 2^52 bit trick
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(exp_bits, magic)),
                            _mm256_set1_pd(4503599627370496.0));
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));

  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

  // keep m in [sqrt(1/2), sqrt(2))
  const __m256d gt = _mm256_cmp_pd(m, sqrt2, _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), gt);
  e = _mm256_add_pd(e, _mm256_and_pd(gt, kOne));

  // log(m) = 2 atanh(s), s = (m-1)/(m+1), |s| <= 0.1716
  const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, kOne), _mm256_add_pd(m, kOne));
  const __m256d s2 = _mm256_mul_pd(s, s);
  __m256d q = _mm256_set1_pd(1.0 / 23.0);
  q = _mm256_fmadd_pd(q, s2, _mm256_set1_pd(1.0 / 21.0));
  q = _mm256_fmadd_pd(q, s2, _mm256_set1_pd(1.0 / 19.0));
  q = _mm256_fmadd_pd(q, s2, _mm256_set1_pd(1.0 / 17.0));
  q = _mm256_fmadd_pd(q, s2, _mm256_set1_pd(1.0 / 15.0));
  q = _mm256_fmadd_pd(q, s2, _mm256_set1_pd(1.0 / 13.0));
  q = _mm256_fmadd_pd(q, s2, _mm256_set1_pd(1.0 / 11.0));
  q = _mm256_fmadd_pd(q, s2, _mm256_set1_pd(1.0 / 9.0));
  q = _mm256_fmadd_pd(q, s2, _mm256_set1_pd(1.0 / 7.0));
  q = _mm256_fmadd_pd(q, s2, _mm256_set1_pd(1.0 / 5.0));
  q = _mm256_fmadd_pd(q, s2, _mm256_set1_pd(1.0 / 3.0));
  const __m256d atanh2 = _mm256_mul_pd(_mm256_add_pd(s, s),
                                       _mm256_fmadd_pd(s2, q, kOne));

  __m256d res = _mm256_fmadd_pd(e, ln2_lo, atanh2);
  res = _mm256_fmadd_pd(e, ln2_hi, res);
  return _mm256_blendv_pd(res, qnan, bad);
}

inline __m256d eval4(const BlendPowExp& k, __m256d t, bool passthrough) {
  const __m256d w = _mm256_fmadd_pd(
      _mm256_set1_pd(k.b), exp4(_mm256_mul_pd(_mm256_set1_pd(-k.rate), t)),
      _mm256_set1_pd(k.a));
  if (passthrough) return w;
  const __m256d arg = _mm256_fmadd_pd(_mm256_set1_pd(k.pow), log4(w),
                                      _mm256_mul_pd(_mm256_set1_pd(-k.decay), t));
  return exp4(arg);
}

}  // namespace

void blend_pow_exp_avx2(const BlendPowExp& k, const double* t, double* out, std::size_t n) {
  const bool passthrough = (k.pow == 1.0 && k.decay == 0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, eval4(k, _mm256_loadu_pd(t + i), passthrough));
  if (i < n) {
    // Pad the tail to a full vector so a given t always yields the same
    // bits regardless of batch size.
    alignas(32) double tb[4];
    alignas(32) double ob[4];
    for (std::size_t j = 0; j < 4; ++j) tb[j] = t[j < n - i ? i + j : n - 1];
    _mm256_store_pd(ob, eval4(k, _mm256_load_pd(tb), passthrough));
    for (std::size_t j = 0; j < n - i; ++j) out[i + j] = ob[j];
  }
}

}  // namespace lucaslab::kernels

#endif  // x86_64
