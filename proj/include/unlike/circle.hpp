#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "unlike/params.hpp"

namespace unlike::circle {

// One factor of the local sum: S_k(q,a) over all residues, or S*_k(q,a)
// over units only.
struct LocalFactor {
  int k = 2;
  bool units_only = false;
};

// The 13-variable problem: S_k for k ∈ {2,3,4,12,13,14}, S*_k for 5..11.
std::vector<LocalFactor> full_signature();
// S_k for each listed degree (x² + y³ is {2, 3}).
std::vector<LocalFactor> plain_signature(const std::vector<int>& degrees);

// A(q) = q^{−c} φ(q)^{−d} Σ_{(a,q)=1} ∏ S(q,a) e(−an/q), c and d counting
// the complete and unit-restricted factors.
std::complex<double> A_of_q_complex(std::uint64_t q, std::uint64_t n,
                                    const std::vector<LocalFactor>& sig);
double A_of_q(std::uint64_t q, std::uint64_t n, const std::vector<LocalFactor>& sig);

struct SingularSeriesPartial {
  std::uint64_t n = 0;
  std::vector<std::pair<std::uint64_t, double>> Aq;  // (q, A(q)), q = 1..X
  std::vector<double> partial;                        // 𝔖(n; q) for q = 1..X
  double max_imag = 0;                                // max |Im A(q)|
  double C = 0;                                       // max_q |A(q)| q^{7/2}
  double tail_estimate = 0;                           // C·(2/3)X^{−5/2}
  double value() const { return partial.empty() ? 0 : partial.back(); }
  double at(std::uint64_t X) const { return partial.at(X - 1); }
  // 𝔖(n; X₂) − 𝔖(n; X₁) summed directly, so increments far below the
  // spacing of doubles near 𝔖 survive.
  double increment(std::uint64_t X1, std::uint64_t X2) const;
};

SingularSeriesPartial singular_series(std::uint64_t n, std::uint64_t X,
                                      const std::vector<LocalFactor>& sig);

// Which archimedean factors enter v(β).
struct IntegralSpec {
  std::vector<int> weighted{2, 3};       // v_k
  std::vector<int> prime_products;       // v*_k
  std::vector<int> smooth_constants;     // Y_k′ multipliers
};
IntegralSpec full_integral_spec();

struct SingularIntegral {
  double value = 0;
  double imag = 0;
  double B = 0;
  bool decayed = true;        // |v(±B)| < 10⁻⁶ |v(0)|
  bool accurate = true;       // every inner quadrature converged
  double at_zero = 0;         // v(0), including the constants
  double constants = 1;       // ∏ Y_k′
  int r_prime = 0;            // Σ r_k over the v* factors
  // Set when the panels needed exceed the budget and m lies outside the
  // support of Σ x_k^k: then |𝔍| ≤ v(0)/(π·distance), value is 0 and
  // bound holds that limit.
  bool support_shortcut = false;
  double bound = 0;
};

// v(β) = ∏ v_k(β) ∏ v*_k(β), times ∏ Y_k′.
std::complex<double> integrand_v(double beta, const GlobalParameters& params,
                                 const IntegralSpec& spec, bool* accurate = nullptr);
// Smallest B = 2^j/n with |v(±B)| < 10⁻⁶ v(0).
double auto_B(const GlobalParameters& params, const IntegralSpec& spec);
// ∫_{−B}^{B} v(β) e(−mβ) dβ; B ≤ 0 selects auto_B.
SingularIntegral singular_integral(std::uint64_t m, double B, const GlobalParameters& params,
                                   const IntegralSpec& spec);
// For two weighted variables x^j + y^k the β-integral collapses to
// ∫ w(x/X_j) w(y/X_k) / (k y^{k−1}) dx with y = (m − x^j)^{1/k}.
double delta_integral_2(std::uint64_t m, int j, int k, const GlobalParameters& params);

struct MainTermRow {
  std::uint64_t n = 0;
  double count = 0;
  double series = 0;
  double integral = 0;
  double main = 0;
  double ratio = 0;  // NaN when the main term vanishes
  bool flagged = false;
};
struct MainTermReport {
  std::vector<MainTermRow> rows;
  double mean_ratio = 0;      // over rows with a finite ratio
  double pooled_ratio = 0;    // Σ count / Σ main
  std::size_t solutions = 0;  // unweighted solutions in the window
};

// Weighted x^{k₁} + ... + x^{k_s} for the listed degrees, each variable
// carrying w(x/X_k). Counts are exact; the main term is 𝔖(n; qmax)·𝔍(n).
MainTermReport main_term_vs_count(std::uint64_t n_start, std::size_t n_count,
                                  const std::vector<int>& degrees,
                                  const GlobalParameters& params, std::uint64_t qmax = 400);

}  // namespace unlike::circle
