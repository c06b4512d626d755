// Built with -mavx2 -mfma; only reached after the CPUID check in dispatch.cpp.

#include <immintrin.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "unlike/compensated.hpp"
#include "unlike/simd.hpp"

namespace unlike::simd {

namespace {

constexpr int kRound = _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC;

inline __m256d frac_product(__m256d a, __m256d b) {
  const __m256d p = _mm256_mul_pd(a, b);
  const __m256d e = _mm256_fmsub_pd(a, b, p);
  return _mm256_add_pd(_mm256_sub_pd(p, _mm256_round_pd(p, kRound)), e);
}

// cos and sin of 2πr for r ∈ [−1/2, 1/2]. Reduces to |x| ≤ π/4 and rotates
// by the quadrant.
inline void sincos_turns(__m256d r, __m256d& c, __m256d& s) {
  const __m256d qd = _mm256_round_pd(_mm256_mul_pd(r, _mm256_set1_pd(4.0)), kRound);
  const __m256d t = _mm256_fnmadd_pd(qd, _mm256_set1_pd(0.25), r);
  const __m256d x = _mm256_mul_pd(t, _mm256_set1_pd(2 * std::numbers::pi));
  const __m256d x2 = _mm256_mul_pd(x, x);

  // Taylor series; the first omitted terms are below 1e-19 on |x| ≤ π/4.
  __m256d ps = _mm256_set1_pd(1.0 / 355687428096000.0);   // 1/17!
  ps = _mm256_fmadd_pd(ps, x2, _mm256_set1_pd(-1.0 / 1307674368000.0));
  ps = _mm256_fmadd_pd(ps, x2, _mm256_set1_pd(1.0 / 6227020800.0));
  ps = _mm256_fmadd_pd(ps, x2, _mm256_set1_pd(-1.0 / 39916800.0));
  ps = _mm256_fmadd_pd(ps, x2, _mm256_set1_pd(1.0 / 362880.0));
  ps = _mm256_fmadd_pd(ps, x2, _mm256_set1_pd(-1.0 / 5040.0));
  ps = _mm256_fmadd_pd(ps, x2, _mm256_set1_pd(1.0 / 120.0));
  ps = _mm256_fmadd_pd(ps, x2, _mm256_set1_pd(-1.0 / 6.0));
  const __m256d sx = _mm256_fmadd_pd(_mm256_mul_pd(ps, x2), x, x);

  __m256d pc = _mm256_set1_pd(1.0 / 6402373705728000.0);  // 1/18!
  pc = _mm256_fmadd_pd(pc, x2, _mm256_set1_pd(-1.0 / 20922789888000.0));
  pc = _mm256_fmadd_pd(pc, x2, _mm256_set1_pd(1.0 / 87178291200.0));
  pc = _mm256_fmadd_pd(pc, x2, _mm256_set1_pd(-1.0 / 479001600.0));
  pc = _mm256_fmadd_pd(pc, x2, _mm256_set1_pd(1.0 / 3628800.0));
  pc = _mm256_fmadd_pd(pc, x2, _mm256_set1_pd(-1.0 / 40320.0));
  pc = _mm256_fmadd_pd(pc, x2, _mm256_set1_pd(1.0 / 720.0));
  pc = _mm256_fmadd_pd(pc, x2, _mm256_set1_pd(-1.0 / 24.0));
  pc = _mm256_fmadd_pd(pc, x2, _mm256_set1_pd(0.5));
  const __m256d cx = _mm256_fnmadd_pd(pc, x2, _mm256_set1_pd(1.0));

  // Quadrant q: e(r) = i^q e(t). Odd q swaps cos and sin; the signs follow
  // bit 1 of q+1 (cos) and bit 1 of q (sin).
  const __m256i q = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(qd));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, one), one));
  const __m256d a = _mm256_blendv_pd(cx, sx, swap);
  const __m256d b = _mm256_blendv_pd(sx, cx, swap);
  const __m256i sign_c = _mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(q, one), two), 62);
  const __m256i sign_s = _mm256_slli_epi64(_mm256_and_si256(q, two), 62);
  c = _mm256_xor_pd(a, _mm256_castsi256_pd(sign_c));
  s = _mm256_xor_pd(b, _mm256_castsi256_pd(sign_s));
}

struct Accum {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  void add(__m256d x) {
    const __m256d t = _mm256_add_pd(sum, x);
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d big = _mm256_cmp_pd(_mm256_and_pd(sum, abs_mask), _mm256_and_pd(x, abs_mask),
                                      _CMP_GE_OQ);
    const __m256d c1 = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
    const __m256d c2 = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(c2, c1, big));
    sum = t;
  }

  void drain(Neumaier& out) const {
    alignas(32) double s[4], c[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(c, comp);
    for (int i = 0; i < 4; ++i) {
      out.add(s[i]);
      out.add(c[i]);
    }
  }
};

Complex phase_sum_avx2(const double* hi, const double* lo, const double* w, std::size_t n,
                       double alpha) {
  const double a_lo = alpha - std::floor(alpha);
  const double scaled = std::ldexp(a_lo, 32);
  const double a_hi = scaled - std::floor(scaled);
  const __m256d vhi = _mm256_set1_pd(a_hi);
  const __m256d vlo = _mm256_set1_pd(a_lo);

  Accum re, im;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_add_pd(frac_product(_mm256_loadu_pd(hi + i), vhi),
                              frac_product(_mm256_loadu_pd(lo + i), vlo));
    r = _mm256_sub_pd(r, _mm256_round_pd(r, kRound));
    __m256d c, s;
    sincos_turns(r, c, s);
    const __m256d wv = _mm256_loadu_pd(w + i);
    re.add(_mm256_mul_pd(wv, c));
    im.add(_mm256_mul_pd(wv, s));
  }
  Neumaier out_re, out_im;
  re.drain(out_re);
  im.drain(out_im);
  if (i < n) {
    // Tail through the same polynomial, padded with zero weights.
    alignas(32) double th[4] = {0, 0, 0, 0}, tl[4] = {0, 0, 0, 0}, tw[4] = {0, 0, 0, 0};
    for (std::size_t j = 0; i + j < n; ++j) {
      th[j] = hi[i + j];
      tl[j] = lo[i + j];
      tw[j] = w[i + j];
    }
    __m256d r = _mm256_add_pd(frac_product(_mm256_load_pd(th), vhi),
                              frac_product(_mm256_load_pd(tl), vlo));
    r = _mm256_sub_pd(r, _mm256_round_pd(r, kRound));
    __m256d c, s;
    sincos_turns(r, c, s);
    alignas(32) double cr[4], ci[4];
    _mm256_store_pd(cr, _mm256_mul_pd(_mm256_load_pd(tw), c));
    _mm256_store_pd(ci, _mm256_mul_pd(_mm256_load_pd(tw), s));
    for (int j = 0; j < 4; ++j) {
      out_re.add(cr[j]);
      out_im.add(ci[j]);
    }
  }
  return {out_re.value(), out_im.value()};
}

void add_saturating_avx2(std::uint32_t* dst, const std::uint32_t* src, std::size_t n) {
  std::size_t i = 0;
  const __m256i ones = _mm256_set1_epi32(-1);
  for (; i + 8 <= n; i += 8) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i s = _mm256_add_epi32(a, b);
    // Unsigned overflow iff the sum wrapped below a.
    const __m256i wrapped = _mm256_cmpeq_epi32(_mm256_max_epu32(s, a), a);
    const __m256i changed = _mm256_andnot_si256(_mm256_cmpeq_epi32(s, a), wrapped);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_blendv_epi8(s, ones, changed));
  }
  for (; i < n; ++i) {
    const std::uint64_t s = std::uint64_t{dst[i]} + src[i];
    dst[i] = s > std::numeric_limits<std::uint32_t>::max() ? std::numeric_limits<std::uint32_t>::max()
                                                           : static_cast<std::uint32_t>(s);
  }
}

void or_shifted_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words,
                     std::size_t shift) {
  const std::size_t ws = shift / 64;
  const unsigned bs = shift % 64;
  if (ws >= words) return;
  const __m128i vbs = _mm_cvtsi32_si128(static_cast<int>(bs));
  const __m128i vrs = _mm_cvtsi32_si128(static_cast<int>(64 - bs));
  // Walk downward so that dst == src works for in-place updates.
  std::size_t i = words;
  while (i >= ws + 5) {
    i -= 4;
    const std::size_t j = i - ws;  // j ≥ 1, so src[j − 1] is valid
    const __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j));
    __m256i v = _mm256_sll_epi64(cur, vbs);
    if (bs != 0) {
      const __m256i prev = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j - 1));
      v = _mm256_or_si256(v, _mm256_srl_epi64(prev, vrs));
    }
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(d, v));
  }
  while (i-- > ws) {
    const std::size_t j = i - ws;
    std::uint64_t v = src[j] << bs;
    if (bs != 0 && j > 0) v |= src[j - 1] >> (64 - bs);
    dst[i] |= v;
  }
}

void axpy_avx2(double* dst, const double* src, double c, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(dst + i);
    _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(vc, _mm256_loadu_pd(src + i), d));
  }
  for (; i < n; ++i) dst[i] += c * src[i];
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels k{phase_sum_avx2, add_saturating_avx2, or_shifted_avx2, axpy_avx2};
  return k;
}

}  // namespace unlike::simd
