#pragma once

// Data-parallel kernels with a scalar reference and an AVX2+FMA variant.
// The variant is picked once at startup from CPUID; UNLIKE_ISA=scalar
// forces the reference path.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace unlike::simd {

enum class Isa { Scalar, Avx2 };

Isa active_isa();
const char* isa_name(Isa isa);
bool isa_available(Isa isa);
// Test hook. Throws if the requested variant is not available on this CPU.
void force_isa(Isa isa);

struct Complex {
  double re = 0;
  double im = 0;
};

// Terms c_j e(m_j α) with integer frequencies m_j < 2⁶³, split as
// m = hi·2³² + lo so that m·α mod 1 is formed without losing the low bits.
struct PhaseTerms {
  std::vector<double> hi;
  std::vector<double> lo;
  std::vector<double> weight;

  void push(std::uint64_t m, double c);
  std::size_t size() const { return weight.size(); }
};

Complex phase_sum(const PhaseTerms& terms, double alpha);
// dst[i] = min(dst[i] + src[i], UINT32_MAX)
void add_saturating_u32(std::uint32_t* dst, const std::uint32_t* src, std::size_t n);
// Bit i of dst gets OR-ed with bit (i − shift) of src; both are `words` long.
void or_shifted(std::uint64_t* dst, const std::uint64_t* src, std::size_t words,
                std::size_t shift);
// dst[i] += c·src[i]
void axpy(double* dst, const double* src, double c, std::size_t n);

struct Kernels {
  Complex (*phase_sum)(const double* hi, const double* lo, const double* w, std::size_t n,
                       double alpha);
  void (*add_saturating_u32)(std::uint32_t*, const std::uint32_t*, std::size_t);
  void (*or_shifted)(std::uint64_t*, const std::uint64_t*, std::size_t, std::size_t);
  void (*axpy)(double*, const double*, double, std::size_t);
};

const Kernels& scalar_kernels();
#if defined(UNLIKE_HAVE_AVX2_TU)
const Kernels& avx2_kernels();
#endif
const Kernels& kernels_for(Isa isa);

}  // namespace unlike::simd
