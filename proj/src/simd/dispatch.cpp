#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "unlike/error.hpp"
#include "unlike/simd.hpp"

namespace unlike::simd {

namespace {

bool cpu_has_avx2() {
#if defined(UNLIKE_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  const char* env = std::getenv("UNLIKE_ISA");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) throw Error(std::string("instruction set not available: ") + isa_name(isa));
  current().store(isa, std::memory_order_relaxed);
}

const Kernels& kernels_for(Isa isa) {
#if defined(UNLIKE_HAVE_AVX2_TU)
  if (isa == Isa::Avx2) return avx2_kernels();
#endif
  (void)isa;
  return scalar_kernels();
}

void PhaseTerms::push(std::uint64_t m, double c) {
  hi.push_back(static_cast<double>(m >> 32));
  lo.push_back(static_cast<double>(m & 0xffffffffULL));
  weight.push_back(c);
}

Complex phase_sum(const PhaseTerms& terms, double alpha) {
  return kernels_for(active_isa())
      .phase_sum(terms.hi.data(), terms.lo.data(), terms.weight.data(), terms.size(), alpha);
}

void add_saturating_u32(std::uint32_t* dst, const std::uint32_t* src, std::size_t n) {
  kernels_for(active_isa()).add_saturating_u32(dst, src, n);
}

void or_shifted(std::uint64_t* dst, const std::uint64_t* src, std::size_t words,
                std::size_t shift) {
  kernels_for(active_isa()).or_shifted(dst, src, words, shift);
}

void axpy(double* dst, const double* src, double c, std::size_t n) {
  kernels_for(active_isa()).axpy(dst, src, c, n);
}

}  // namespace unlike::simd
