#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace unlike::arith {

// Primes below 10⁶, computed once.
const std::vector<std::uint32_t>& small_primes();

struct PrimePower {
  std::uint64_t p = 0;
  int e = 0;
};

// Trial division against small_primes(); inputs above 10¹² are rejected
// with "unfactored input".
std::vector<PrimePower> factorize(std::uint64_t n);

inline constexpr std::uint64_t kFactorLimit = 1000000000000ULL;

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
// Saturates at UINT64_MAX.
std::uint64_t ipow(std::uint64_t base, int exp);
// Largest x with x^k ≤ n.
std::uint64_t iroot(std::uint64_t n, int k);

std::uint64_t euler_phi(std::uint64_t q);
std::uint64_t divisor_count(std::uint64_t m);

// 𝒜(P, R): integers in [1, P] with every prime factor ≤ R.
struct SmoothSet {
  std::uint64_t P = 0;
  std::uint64_t R = 0;
  std::vector<std::uint64_t> members;  // ascending, always starts with 1
};

// Default budget is 2²⁶ sieve cells (about 256 MiB of u32).
inline constexpr std::uint64_t kSieveBudget = 1ULL << 26;

SmoothSet smooth_sieve(std::uint64_t P, std::uint64_t R, std::uint64_t budget = kSieveBudget);
// Cardinality only, sieving [1, P] in segments of `chunk` cells.
std::uint64_t smooth_count_chunked(std::uint64_t P, std::uint64_t R,
                                   std::uint64_t chunk = 1ULL << 20);

// Primes p with lo < p ≤ hi.
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi);

// τ_t(x): ordered t-tuples of primes in (R/2, R] with product x.
struct PrimeProductTable {
  std::uint64_t R = 0;
  int t = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;  // (x, τ_t(x)), x ascending

  std::uint64_t at(std::uint64_t x) const;
  std::uint64_t total() const;
  std::uint64_t max_count() const;
};
PrimeProductTable tau_table(std::uint64_t R, int t);

// ϱ_k(d) = ∏ p^{⌈v_p(d)/k⌉}.
std::uint64_t k_radical(std::uint64_t d, int k);
// d₁⋯d_k from the literal decomposition d = d₁d₂²⋯d_k^k with d₁⋯d_{k−1}
// squarefree; slow, used as a cross-check.
std::uint64_t k_radical_literal(std::uint64_t d, int k);
// #{1 ≤ m ≤ M : d | m^k}.
std::uint64_t count_multiples_pow(std::uint64_t M, std::uint64_t d, int k);

struct ModularSumValue {
  double re = 0;
  double im = 0;
  std::uint64_t q = 0, a = 0;
  int k = 0;
  double abs() const;
};

inline constexpr std::uint64_t kModulusBound = 100000;

// S_k(q,a) = Σ_{x=1}^{q} e(a x^k / q).
ModularSumValue complete_sum(std::uint64_t q, std::uint64_t a, int k);
// S*_k(q,a), the same sum restricted to gcd(x, q) = 1.
ModularSumValue coprime_sum(std::uint64_t q, std::uint64_t a, int k);

// Residue histogram of x^k mod q over x = 1..q (or over units only), the
// shared first step of every complete sum with this (q, k).
struct PowerResidues {
  std::uint64_t q = 0;
  int k = 0;
  std::vector<std::uint32_t> residue;  // distinct residues r
  std::vector<std::uint32_t> count;    // multiplicity of r
};
PowerResidues power_residues(std::uint64_t q, int k, bool units_only);
// Σ_r count(r) e(a r / q) with exact reduction of a·r mod q.
ModularSumValue evaluate_residues(const PowerResidues& pr, std::uint64_t a);

// Multiplicative majorant: p^{ku+v} ∥ q contributes k p^{−u−1/2} if v = 1,
// else p^{−u−1}.
double omega_k(std::uint64_t q, int k);

// Exhaustive scan of |S_k(q,a)| over 1 ≤ q ≤ qmax, k ∈ [kmin, kmax],
// (a,q) = 1, with one root-of-unity table per q.
struct MajorantScan {
  double max_ratio = 0;        // max |S_k(q,a)| / (q ω_k(q))
  std::uint64_t q = 0, a = 0;  // where the maximum sits
  int k = 0;
  double max_over_q = 0;       // max |S_k(q,a)| / q
  std::uint64_t evaluated = 0;
};
MajorantScan majorant_scan(std::uint64_t qmax, int kmin, int kmax);

}  // namespace unlike::arith
