#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "unlike/arcs.hpp"
#include "unlike/params.hpp"
#include "unlike/sums.hpp"

namespace unlike::counting {

enum class RangeKind { Plain, Weighted, Smooth, PrimeProduct };

// Where one variable of degree k lives. Plain: 1 ≤ x, x^k ≤ N.
// Weighted: X_k/2 ≤ x ≤ X_k with weight w(x/X_k). Smooth: x ∈ 𝒜(Y, R).
// PrimeProduct: x = p₁⋯p_r, p_i ∈ (R/2, R], multiplicity τ_r(x).
struct VarRange {
  RangeKind kind = RangeKind::Plain;
  int k = 2;
  std::uint64_t N = 0;   // Plain: bound on x^k
  double X = 0;          // Weighted
  double Y = 0;          // Smooth
  std::uint64_t R = 0;   // Smooth, PrimeProduct
  int r = 1;             // PrimeProduct

  // (x^k, multiplicity) for every admissible x, ascending in x.
  std::vector<std::pair<std::uint64_t, double>> terms() const;
  bool integral() const { return kind != RangeKind::Weighted; }
};

struct SignatureTerm {
  VarRange range;
  int count = 1;
};

struct PowerSignature {
  std::vector<SignatureTerm> terms;
  std::size_t variables() const;
  std::uint64_t minimal_sum() const;
};

// x₁² + x₂³ + … + x₁₃¹⁴ with plain ranges up to N.
PowerSignature theorem_signature(std::uint64_t N);
// One plain variable per listed degree.
PowerSignature plain_signature(const std::vector<int>& degrees, std::uint64_t N);

enum class TableMode { Count, Bitset };

struct RepresentationTable {
  std::uint64_t N = 0;
  TableMode mode = TableMode::Count;
  std::vector<std::uint32_t> counts;  // Count mode, N + 1 cells
  std::vector<std::uint64_t> bits;    // Bitset mode
  std::uint64_t saturated = 0;        // cells at UINT32_MAX

  bool representable(std::uint64_t m) const;
  std::uint32_t count(std::uint64_t m) const;
};

RepresentationTable build_table(const PowerSignature& sig, std::uint64_t N, TableMode mode,
                                std::uint64_t budget = 100000000);

// Cells that saturated in `counts` must be representable in `bits`.
bool saturation_consistent(const RepresentationTable& counts, const RepresentationTable& bits);

struct ExceptionalSet {
  std::vector<std::uint64_t> values;  // 1 ≤ n ≤ N with no representation
  std::uint64_t largest = 0;          // 0 when empty
};
ExceptionalSet exceptional_set(const RepresentationTable& table);

// Representability by splitting the variables into two halves. The
// denser half becomes a bitset, the sparser one a sorted list of
// distinct sums; m is representable iff some listed s ≤ m has m − s set.
RepresentationTable mitm_bitset(const PowerSignature& sig, std::uint64_t N, std::size_t split);
// Exact counts for the listed m through the same split: the left half as
// a dense count array, the right half as sparse (sum, count) pairs.
std::vector<std::uint64_t> mitm_counts(const PowerSignature& sig,
                                       const std::vector<std::uint64_t>& ms, std::size_t split);
// Split index minimizing the larger half's tuple count.
std::size_t balanced_split(const PowerSignature& sig, std::uint64_t N);

// Σ_{left} = Σ_{right}, each side a list of variables.
struct EquationSpec {
  std::vector<VarRange> left;
  std::vector<VarRange> right;
};

// ∫₀¹ ∏ |S_j(α)|^{2 s_j}: each factor contributes s_j variables per side.
struct MeanValueSpec {
  std::vector<std::pair<VarRange, int>> factors;  // (range, s)
  EquationSpec equation() const;
};

struct MeanValue {
  double value = 0;           // weighted total
  std::uint64_t exact = 0;    // set when every range is unweighted
  bool integral = true;
  std::uint64_t left_support = 0;
  std::uint64_t right_support = 0;
};

inline constexpr std::uint64_t kSideBudget = 200000000;

MeanValue mean_value(const EquationSpec& eq, std::uint64_t budget = kSideBudget);
MeanValue mean_value(const MeanValueSpec& spec, std::uint64_t budget = kSideBudget);

// Distribution of Σ x_i^{k_i} over one side: ascending (sum, weight).
std::vector<std::pair<std::uint64_t, double>> side_distribution(
    const std::vector<VarRange>& side, std::uint64_t budget = kSideBudget);

// Text form: factors joined by '*', each KIND K(key=value,...)^EXP with
// EXP even. KIND: x (plain, N), F (weighted, X), f (smooth, Y and R),
// g (prime product, R and r). Example: "f3(Y=30,R=7)^4".
MeanValueSpec parse_mean_value_spec(const std::string& text);

struct RestrictedMeanValue {
  double major = 0;           // quadrature over the arcs
  double minor_quadrature = 0;
  double exact_total = 0;     // Parseval count
  double minor = 0;           // exact_total − major
  std::size_t panels = 0;
};
// ∫_{arcs} |g_k|^{2s}, with the complement taken against the exact count.
RestrictedMeanValue restricted_mean_value(const sums::ExponentialSum& sum, const VarRange& range,
                                          int s, const arcs::ArcSystem& system);

VarRange range_for(const sums::SumSpec& spec);

// Σ over solutions of n = Σ x_i^{k_i} of ∏ w(x_i/X_{k_i}) for weighted
// variables of the listed degrees, by direct enumeration.
double weighted_count(std::uint64_t n, const std::vector<int>& degrees,
                      const GlobalParameters& params, std::size_t* solutions = nullptr);

// The 13-variable weighted count: x₂, x₃ weighted; k = 5..11 prime
// products with τ multiplicities; k ∈ {4,12,13,14} smooth. The unweighted
// part is tabulated first and joined against the weighted pairs.
double weighted_count_full(std::uint64_t n, const GlobalParameters& params);
// All values 𝒩(m), m ≤ limit, of the same count.
std::vector<double> weighted_count_table(std::uint64_t limit, const GlobalParameters& params);

// 16-byte header: "UNLK", u16 version, u16 mode, u64 N; then N + 1
// little-endian u32 counters or ⌈(N+1)/64⌉ u64 words.
void write_table(const RepresentationTable& table, const std::filesystem::path& path);
RepresentationTable read_table(const std::filesystem::path& path);

}  // namespace unlike::counting
