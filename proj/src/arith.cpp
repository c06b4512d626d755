#include "unlike/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "unlike/compensated.hpp"
#include "unlike/error.hpp"
#include "unlike/parallel.hpp"

namespace unlike::arith {

namespace {

std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  const auto& small = small_primes();
  std::vector<std::uint64_t> out;
  if (limit < 1000000) {
    for (auto p : small) {
      if (p > limit) break;
      out.push_back(p);
    }
    return out;
  }
  for (auto p : sieve_primes(limit)) out.push_back(p);
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

void require_reduced(std::uint64_t q, std::uint64_t a) {
  if (q == 0 || a == 0 || a > q || gcd(a, q) != 1) throw Error("reduced fraction required");
  if (q > kModulusBound) throw Error("modulus beyond configured bound");
}

}  // namespace

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = sieve_primes(999999);
  return primes;
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  if (n == 0) throw Error("cannot factor zero");
  if (n > kFactorLimit) throw Error("unfactored input");
  std::vector<PrimePower> out;
  for (std::uint64_t p : small_primes()) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 1) return 0;
  std::uint64_t result = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result *= base;
  }
  return result;
}

namespace {

// x^k ≤ n without the saturation of ipow hiding an overflow.
bool pow_at_most(std::uint64_t x, int k, std::uint64_t n) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (x != 0 && r > n / x) return false;
    r *= x;
  }
  return r <= n;
}

}  // namespace

std::uint64_t iroot(std::uint64_t n, int k) {
  if (k <= 1 || n <= 1) return n;
  auto x = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
  while (x > 0 && !pow_at_most(x, k, n)) --x;
  while (pow_at_most(x + 1, k, n)) ++x;
  return x;
}

std::uint64_t euler_phi(std::uint64_t q) {
  std::uint64_t phi = q;
  for (const auto& [p, e] : factorize(q)) phi = phi / p * (p - 1);
  return phi;
}

std::uint64_t divisor_count(std::uint64_t m) {
  std::uint64_t d = 1;
  for (const auto& [p, e] : factorize(m)) d *= static_cast<std::uint64_t>(e + 1);
  return d;
}

SmoothSet smooth_sieve(std::uint64_t P, std::uint64_t R, std::uint64_t budget) {
  if (P < 1 || R < 1) throw Error("smooth sieve needs P >= 1 and R >= 1");
  if (P > budget) throw Error("range too large; use chunked mode");
  // lpf[x] ends up as the largest prime factor of x (1 for x = 1).
  std::vector<std::uint32_t> lpf(P + 1, 1);
  for (std::uint64_t p = 2; p <= P; ++p) {
    if (lpf[p] != 1) continue;
    for (std::uint64_t m = p; m <= P; m += p) lpf[m] = static_cast<std::uint32_t>(p);
  }
  SmoothSet out{P, R, {}};
  for (std::uint64_t x = 1; x <= P; ++x) {
    if (lpf[x] <= R) out.members.push_back(x);
  }
  return out;
}

std::uint64_t smooth_count_chunked(std::uint64_t P, std::uint64_t R, std::uint64_t chunk) {
  if (P < 1 || R < 1) throw Error("smooth sieve needs P >= 1 and R >= 1");
  if (chunk == 0) chunk = 1ULL << 20;
  if (R >= P) return P;
  const auto primes = primes_up_to(R);
  std::vector<std::uint64_t> rem;
  std::uint64_t total = 0;
  for (std::uint64_t lo = 1; lo <= P; lo += chunk) {
    const std::uint64_t hi = std::min(P, lo + chunk - 1);
    rem.resize(hi - lo + 1);
    for (std::uint64_t x = lo; x <= hi; ++x) rem[x - lo] = x;
    for (std::uint64_t p : primes) {
      if (p > hi) break;
      for (std::uint64_t x = (lo + p - 1) / p * p; x <= hi; x += p) {
        auto& r = rem[x - lo];
        while (r % p == 0) r /= p;
      }
    }
    for (auto r : rem) total += (r == 1);
  }
  return total;
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (auto p : primes_up_to(hi)) {
    if (p > lo) out.push_back(p);
  }
  return out;
}

std::uint64_t PrimeProductTable::at(std::uint64_t x) const {
  const auto it = std::lower_bound(counts.begin(), counts.end(), std::pair{x, std::uint64_t{0}});
  return (it != counts.end() && it->first == x) ? it->second : 0;
}

std::uint64_t PrimeProductTable::total() const {
  std::uint64_t s = 0;
  for (const auto& [x, c] : counts) s += c;
  return s;
}

std::uint64_t PrimeProductTable::max_count() const {
  std::uint64_t m = 0;
  for (const auto& [x, c] : counts) m = std::max(m, c);
  return m;
}

PrimeProductTable tau_table(std::uint64_t R, int t) {
  if (t < 1) throw Error("tau table needs t >= 1");
  PrimeProductTable table{R, t, {}};
  const auto primes = primes_between(R / 2, R);
  if (primes.empty()) return table;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> cur{{1, 1}};
  for (int step = 0; step < t; ++step) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> next;
    next.reserve(cur.size() * primes.size());
    for (const auto& [x, c] : cur) {
      for (auto p : primes) {
        if (x > std::numeric_limits<std::uint64_t>::max() / p) throw Error("prime product overflow");
        next.emplace_back(x * p, c);
      }
    }
    std::sort(next.begin(), next.end());
    cur.clear();
    for (const auto& [x, c] : next) {
      if (!cur.empty() && cur.back().first == x) {
        cur.back().second += c;
      } else {
        cur.emplace_back(x, c);
      }
    }
  }
  table.counts = std::move(cur);
  return table;
}

std::uint64_t k_radical(std::uint64_t d, int k) {
  if (d == 0 || k < 1) throw Error("k-radical needs d >= 1, k >= 1");
  std::uint64_t r = 1;
  for (const auto& [p, e] : factorize(d)) r *= ipow(p, (e + k - 1) / k);
  return r;
}

std::uint64_t k_radical_literal(std::uint64_t d, int k) {
  if (d == 0 || k < 1) throw Error("k-radical needs d >= 1, k >= 1");
  // d_i for i = 1..k, with d_k absorbing every full k-th power.
  std::vector<std::uint64_t> parts(static_cast<std::size_t>(k) + 1, 1);
  for (const auto& [p, e] : factorize(d)) {
    parts[static_cast<std::size_t>(k)] *= ipow(p, e / k);
    if (e % k != 0) parts[static_cast<std::size_t>(e % k)] *= p;
  }
  std::uint64_t rebuilt = 1, radical = 1;
  for (int i = 1; i <= k; ++i) {
    rebuilt *= ipow(parts[static_cast<std::size_t>(i)], i);
    radical *= parts[static_cast<std::size_t>(i)];
  }
  if (rebuilt != d) throw Error("k-radical decomposition mismatch");
  return radical;
}

std::uint64_t count_multiples_pow(std::uint64_t M, std::uint64_t d, int k) {
  return M / k_radical(d, k);
}

double ModularSumValue::abs() const { return std::hypot(re, im); }

PowerResidues power_residues(std::uint64_t q, int k, bool units_only) {
  if (q == 0 || q > kModulusBound) throw Error("modulus beyond configured bound");
  std::vector<std::uint32_t> hist(q, 0);
  for (std::uint64_t x = 1; x <= q; ++x) {
    if (units_only && gcd(x, q) != 1) continue;
    ++hist[powmod(x, static_cast<std::uint64_t>(k), q)];
  }
  PowerResidues out;
  out.q = q;
  out.k = k;
  for (std::uint64_t r = 0; r < q; ++r) {
    if (hist[r] == 0) continue;
    out.residue.push_back(static_cast<std::uint32_t>(r));
    out.count.push_back(hist[r]);
  }
  return out;
}

ModularSumValue evaluate_residues(const PowerResidues& pr, std::uint64_t a) {
  require_reduced(pr.q, a);
  Neumaier re, im;
  const double step = 2 * std::numbers::pi / static_cast<double>(pr.q);
  for (std::size_t i = 0; i < pr.residue.size(); ++i) {
    const std::uint64_t j = a % pr.q * pr.residue[i] % pr.q;
    const double angle = step * static_cast<double>(j);
    re.add(pr.count[i] * std::cos(angle));
    im.add(pr.count[i] * std::sin(angle));
  }
  return {re.value(), im.value(), pr.q, a, pr.k};
}

ModularSumValue complete_sum(std::uint64_t q, std::uint64_t a, int k) {
  require_reduced(q, a);
  return evaluate_residues(power_residues(q, k, false), a);
}

ModularSumValue coprime_sum(std::uint64_t q, std::uint64_t a, int k) {
  require_reduced(q, a);
  return evaluate_residues(power_residues(q, k, true), a);
}

double omega_k(std::uint64_t q, int k) {
  double w = 1;
  for (const auto& [p, e] : factorize(q)) {
    const int u = (e - 1) / k;
    const int v = e - k * u;
    const double pd = static_cast<double>(p);
    w *= (v == 1) ? k * std::pow(pd, -u - 0.5) : std::pow(pd, -u - 1.0);
  }
  return w;
}

MajorantScan majorant_scan(std::uint64_t qmax, int kmin, int kmax) {
  if (qmax > kModulusBound) throw Error("modulus beyond configured bound");
  std::vector<MajorantScan> per_q(qmax);
  parallel_for(qmax, [&](std::size_t i) {
    const std::uint64_t q = i + 1;
    std::vector<double> c(q), s(q);
    const double step = 2 * std::numbers::pi / static_cast<double>(q);
    for (std::uint64_t j = 0; j < q; ++j) {
      c[j] = std::cos(step * static_cast<double>(j));
      s[j] = std::sin(step * static_cast<double>(j));
    }
    MajorantScan& out = per_q[i];
    for (int k = kmin; k <= kmax; ++k) {
      const auto pr = power_residues(q, k, false);
      const double scale = static_cast<double>(q) * omega_k(q, k);
      for (std::uint64_t a = 1; a <= q; ++a) {
        if (gcd(a, q) != 1) continue;
        double re = 0, im = 0;
        for (std::size_t r = 0; r < pr.residue.size(); ++r) {
          const std::uint64_t j = a * pr.residue[r] % q;
          re += pr.count[r] * c[j];
          im += pr.count[r] * s[j];
        }
        const double mag = std::hypot(re, im);
        ++out.evaluated;
        out.max_over_q = std::max(out.max_over_q, mag / static_cast<double>(q));
        if (mag / scale > out.max_ratio) {
          out.max_ratio = mag / scale;
          out.q = q;
          out.a = a;
          out.k = k;
        }
      }
    }
  });
  MajorantScan total;
  for (const auto& r : per_q) {
    total.evaluated += r.evaluated;
    total.max_over_q = std::max(total.max_over_q, r.max_over_q);
    if (r.max_ratio > total.max_ratio) {
      total.max_ratio = r.max_ratio;
      total.q = r.q;
      total.a = r.a;
      total.k = r.k;
    }
  }
  return total;
}

}  // namespace unlike::arith
