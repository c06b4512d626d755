#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unlike/rational.hpp"

namespace unlike::exponents {

// Key of a permissible exponent: degree k and half-moment s (the moment is 2s).
struct ExponentKey {
  int k = 0;
  Rational s;
  friend auto operator<=>(const ExponentKey&, const ExponentKey&) = default;
};

// Cited values λ_{k,s}, one per (k, s). Every entry satisfies s ≤ λ ≤ 2s.
class PermissibleExponentTable {
 public:
  // The values shipped in data/permissible_exponents.txt, compiled in.
  static PermissibleExponentTable cited();
  // Plain-text format: '#' comments, then lines "k s_num s_den lambda".
  static PermissibleExponentTable parse(std::istream& in);
  static PermissibleExponentTable load(const std::filesystem::path& path);

  void set(int k, Rational s, double lambda);
  void erase(int k, Rational s) { entries_.erase({k, s}); }
  bool contains(int k, Rational s) const { return entries_.count({k, s}) != 0; }
  double lambda(int k, Rational s) const;

  // Same table with every entry raised by eps (the λ* = λ + 10⁻¹⁰ variant).
  PermissibleExponentTable shifted(double eps) const;

  const std::map<ExponentKey, double>& entries() const { return entries_; }

 private:
  std::map<ExponentKey, double> entries_;
};

// α_{k,s} = (2s − λ_{k,s}) / k.
double alpha_ks(int k, Rational s, const PermissibleExponentTable& table);

// Weights s_k with Σ 1/s_k = 1 once the free index is solved.
struct HolderSystem {
  std::map<int, Rational> weights;  // fixed weights, keyed by degree
  int free_index = 0;
  std::optional<Rational> solved;   // s_free after solve_holder

  Rational weight(int k) const;
  double reciprocal_sum() const;
};

HolderSystem k1_system();  // K₁ = {5,...,11}, free index 7
HolderSystem k2_system();  // K₂ = {4,12,13,14}, free index 4

// s_free = 1 / (1 − Σ_{k≠free} 1/s_k), kept exact.
Rational solve_holder(HolderSystem& system);

struct AlphaK1 {
  double alpha = 0;
  double delta1 = 0;  // alpha − 3/4
};
AlphaK1 alpha_K1(const PermissibleExponentTable& table, const HolderSystem& system);

struct ThetaSigma {
  double theta = 0;
  double sigma = 0;
};
// Defined for (k,s) ∈ {(13,4),(14,4),(14,5)}.
ThetaSigma theta_sigma(int k, int s, const PermissibleExponentTable& table);
// Both sides of the balance equation that θ_{k,s} solves.
std::pair<double, double> theta_balance(int k, int s, double theta,
                                        const PermissibleExponentTable& table);

struct SigmaPrimes {
  double sp13_4 = 0, sp14_4 = 0, sp14_5 = 0;
  bool lt13_4 = false, lt14_4 = false, lt14_5 = false;  // σ′ < σ
};
SigmaPrimes sigma_primes(const PermissibleExponentTable& table);

struct LambdaRho {
  double u1 = 0, u2 = 0, lambda = 0, kappa0 = 0, rho = 0, rho_prime = 0;
};
LambdaRho solve_lambda_rho(const PermissibleExponentTable& table);

// κ₀(λ) = 2/3 + 2λ(1/4 + 1/12 + 1/13 + 1/14).
double kappa0(double lambda);

double alpha_K2(const PermissibleExponentTable& table, const HolderSystem& system);

// δ₂ = 2/9 − 5ρ + λα₂ − λ.
double delta2(double rho, double lambda, double alpha2);

struct ArcExponents {
  double q1_exp = 0;  // 1/2 − 1/36 + ρ
  double q2_exp = 0;  // 4/9 + 2ρ
  bool check = false;
};
ArcExponents arc_exponents(double rho);

// The value of ρ fixed by the lemma statement; the computed ρ sits just
// below it, and δ₂ is quoted with this one.
inline constexpr double kDeclaredRho = 0.004453;
inline constexpr double kQ2Ceiling = 0.4533505;

struct ExponentReport {
  std::map<ExponentKey, double> alpha_ks;
  double s7 = 0, s4 = 0;
  double alphaK1 = 0, alphaK2 = 0;
  double delta1 = 0, delta2 = 0;
  double rho = 0, rho_prime = 0;
  std::map<ExponentKey, double> theta_ks, sigma_ks, sigma_prime_ks;
  double u1 = 0, u2 = 0, lambda = 0;
  double kappa0 = 0, kappa1 = 0, kappa2 = 0;
  double q1_exp = 0, q2_exp = 0;
  // δ₁, δ₂ recomputed from the table shifted by +10⁻¹⁰.
  double delta1_shifted = 0, delta2_shifted = 0;
};
ExponentReport compute_report(const PermissibleExponentTable& table);

enum class Relation { Near, Below };

struct ConstantCheck {
  std::string name;
  double computed = 0;
  double paper_value = 0;
  double tolerance = 0;
  Relation relation = Relation::Near;
  bool pass = false;
  std::string detail;  // set when an input was missing
};

// Near: |computed − paper_value| ≤ tolerance. Below: computed < paper_value.
bool evaluate(const ConstantCheck& row);

std::vector<ConstantCheck> verify_all(const PermissibleExponentTable& table);
bool all_pass(const std::vector<ConstantCheck>& rows);

}  // namespace unlike::exponents
