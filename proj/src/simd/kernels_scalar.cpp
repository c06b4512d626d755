#include <cmath>
#include <limits>
#include <numbers>

#include "unlike/compensated.hpp"
#include "unlike/simd.hpp"

namespace unlike::simd {

namespace {

// frac(a·b) to within a few ulps, using the exact FMA residual.
inline double frac_product(double a, double b) {
  const double p = a * b;
  const double e = std::fma(a, b, -p);
  return (p - std::nearbyint(p)) + e;
}

Complex phase_sum_scalar(const double* hi, const double* lo, const double* w, std::size_t n,
                         double alpha) {
  const double a_lo = alpha - std::floor(alpha);
  const double scaled = std::ldexp(a_lo, 32);
  const double a_hi = scaled - std::floor(scaled);
  Neumaier re, im;
  for (std::size_t i = 0; i < n; ++i) {
    double r = frac_product(hi[i], a_hi) + frac_product(lo[i], a_lo);
    r -= std::nearbyint(r);
    const double x = 2 * std::numbers::pi * r;
    re.add(w[i] * std::cos(x));
    im.add(w[i] * std::sin(x));
  }
  return {re.value(), im.value()};
}

void add_saturating_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t s = std::uint64_t{dst[i]} + src[i];
    dst[i] = s > std::numeric_limits<std::uint32_t>::max() ? std::numeric_limits<std::uint32_t>::max()
                                                           : static_cast<std::uint32_t>(s);
  }
}

void or_shifted_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words,
                       std::size_t shift) {
  const std::size_t ws = shift / 64;
  const unsigned bs = shift % 64;
  if (ws >= words) return;
  for (std::size_t i = words; i-- > ws;) {
    const std::size_t j = i - ws;
    std::uint64_t v = src[j] << bs;
    if (bs != 0 && j > 0) v |= src[j - 1] >> (64 - bs);
    dst[i] |= v;
  }
}

void axpy_scalar(double* dst, const double* src, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += c * src[i];
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{phase_sum_scalar, add_saturating_scalar, or_shifted_scalar, axpy_scalar};
  return k;
}

}  // namespace unlike::simd
