#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace unlike {

struct GlobalParameters {
  std::uint64_t n = 1000000;
  double lambda = 0.9155538;
  std::uint64_t R = 20;        // smoothness bound, set directly at desk scale
  std::uint64_t eta_inv = 0;   // formal only; never drives a computation
  std::map<int, int> r_k;      // prime count for g_k, k = 5..11
  double nu = 0.01;
  double A = 3;                // Q₄ = (log n)^A
  std::uint64_t sieve_budget = 1ULL << 26;
  std::uint64_t table_budget = 100000000;

  GlobalParameters();

  int r(int k) const;
  // n^{1/k}, exact when n is a perfect k-th power.
  double X(int k) const;
  double Y(int k) const;  // n^{λ/k}

  double Q1() const;  // n^{1/2 − 1/36 + ρ}
  double Q2() const;  // n^{4/9 + 2ρ}
  double Q3() const;  // n^{2^{−20}}
  double Q4() const;  // (log n)^A

  // Which links of Q₄ ≤ Q₃ ≤ Q₂ ≤ Q₁ ≤ n^{1/2}/4 fail at this n.
  std::vector<std::string> ordering_violations() const;

  // Throws unlike::Error naming the offending field.
  void validate() const;
};

// key=value lines, '#' comments. Keys: n, lambda, R, eta_inv, r5..r11, nu,
// A, sieve_budget, table_budget.
GlobalParameters parse_config(std::istream& in);
GlobalParameters load_config(const std::filesystem::path& path);
// Applies one key=value pair; used by the file loader and by CLI overrides.
void set_parameter(GlobalParameters& params, const std::string& key, const std::string& value);

// Worker threads for data-parallel scans: UNLIKE_WORKERS, else the
// hardware concurrency.
unsigned worker_count();

}  // namespace unlike
