#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "unlike/arcs.hpp"
#include "unlike/arith.hpp"
#include "unlike/params.hpp"
#include "unlike/simd.hpp"

namespace unlike::sums {

using cplx = std::complex<double>;

// w(t) = exp(−1/(1/16 − (t − 3/4)²)) on (1/2, 1), zero elsewhere.
double weight(double t);
// ∫_{1/2}^{1} w(t) dt by adaptive quadrature.
double weight_integral();

enum class SumKind { Weighted, Smooth, PrimeProduct };

struct SumSpec {
  SumKind kind = SumKind::Weighted;
  int k = 2;
  GlobalParameters params;
};

struct SumValue {
  double re = 0;
  double im = 0;
  std::uint64_t terms = 0;
  double at_zero = 0;
  double abs() const;
  cplx value() const { return {re, im}; }
};

// The terms of one generating function, prepared once and evaluated at
// many α through simd::phase_sum.
class ExponentialSum {
 public:
  explicit ExponentialSum(const SumSpec& spec);

  SumValue at(double alpha) const;
  const SumSpec& spec() const { return spec_; }
  std::uint64_t terms() const { return phases_.size(); }
  double at_zero() const { return at_zero_; }
  // Σ c_x²: the value of ∫₀¹|sum|² since the x^k are distinct.
  double sum_sq_weights() const { return sum_sq_; }
  std::uint64_t max_frequency() const { return max_m_; }
  const simd::PhaseTerms& phases() const { return phases_; }

 private:
  SumSpec spec_;
  simd::PhaseTerms phases_;
  double at_zero_ = 0;
  double sum_sq_ = 0;
  std::uint64_t max_m_ = 0;
};

SumValue eval_sum(const SumSpec& spec, double alpha);

struct OscResult {
  cplx value;
  bool accurate = true;
};

// v_k(β) = ∫_{X_k/2}^{X_k} w(x/X_k) e(x^k β) dx.
OscResult oscillatory_v(int k, double beta, const GlobalParameters& params,
                        double rel_tol = 1e-9);
// Midpoint rule with `points` nodes, the cross-check for oscillatory_v.
cplx oscillatory_v_midpoint(int k, double beta, const GlobalParameters& params,
                            std::size_t points);

// v*_k(β) = (log R)^{−r} ∫_{[R/2,R]^r} e((x₁⋯x_r)^k β) dx for r = r_k ≤ 3.
OscResult v_star(int k, double beta, const GlobalParameters& params, double rel_tol = 1e-7);
// ṽ_k(β) = ∫_{[R/2,R]^r} e((x₁⋯x_r)^k β) dx / ∏ log x_j; r ≤ 2 for β ≠ 0.
OscResult v_tilde(int k, double beta, const GlobalParameters& params, double rel_tol = 1e-7);
// Density of x₁⋯x_r for x_j uniform on [R/2, R] (unnormalized, r ≤ 3).
double product_density(double u, double R, int r);

enum class ApproxKind { F2star, F3star, GkStar, FkSmoothStar };

struct MajorArcApprox {
  ApproxKind kind = ApproxKind::F2star;
  cplx value;
  arcs::ArcLabel label;
};

// F_k* = S_k(q,a) v_k(β)/q, g_k* = S*_k(q,a) v*_k(β)/φ(q),
// f_k* = S_k(q,a) Y_k′/q with Y_k′ = |𝒜(Y_k, R)|.
MajorArcApprox major_approx(ApproxKind kind, int k, const arcs::ArcLabel& label,
                            const GlobalParameters& params);

// Y_k′ as used in the main term: the size of the smooth set.
double y_prime(int k, const GlobalParameters& params);

struct DeltaScan {
  double max_ratio = 0;  // max |F_k − F_k*| / Q^{1/2}
  double at_alpha = 0;
  std::size_t samples = 0;
};
// Samples major-arc points of 𝔐(Q) from a seeded splitmix64 stream: arc
// index = ⌊u₁·#arcs⌋, β = (2u₂ − 1)·halfwidth.
DeltaScan delta_scan(int k, double Q, const GlobalParameters& params, std::size_t samples,
                     std::uint64_t seed);

struct SupScan {
  double ratio = 0;     // max |F₂| over minor grid points / (F₂(0) Q^{−1/2})
  double sup = 0;
  std::size_t minor_points = 0;
};
SupScan minor_arc_sup_scan(int k, double Q, const GlobalParameters& params,
                           std::size_t grid_size);

struct ArcIntegral {
  double major = 0;
  double minor = 0;
  double total() const { return major + minor; }
  std::size_t panels = 0;
};
// ∫ |S(α)|^{2s} over the unit interval, split into the arcs of `system`
// and the remaining minor intervals. Gauss–Legendre panels of width at
// most 1/(s·max frequency) everywhere.
ArcIntegral moment_over_arcs(const ExponentialSum& sum, int s, const arcs::ArcSystem& system,
                             int order = 8);

// t with (nQ^{−2})^{1/k} ≤ R^t < (nQ^{−2})^{1/k}·R, clamped to [0, r].
int factorization_t(int k, double Q, const GlobalParameters& params);
// Σ_{x ≤ R^t} τ_t(x) h(x^k α) with h(β) = Σ_y τ_{r−t}(y) e(y^k β).
cplx g_factorized(int k, int t, double alpha, const GlobalParameters& params);

}  // namespace unlike::sums
