#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "doctest.h"
#include "golden.hpp"
#include "unlike/arcs.hpp"
#include "unlike/counting.hpp"
#include "unlike/error.hpp"
#include "unlike/sums.hpp"

using namespace unlike;
using namespace unlike::counting;

namespace {

VarRange smooth(int k, double Y, std::uint64_t R) {
  VarRange v;
  v.kind = RangeKind::Smooth;
  v.k = k;
  v.Y = Y;
  v.R = R;
  return v;
}

std::map<std::uint64_t, std::uint64_t> power_sums(const std::vector<std::uint64_t>& powers, int s) {
  std::map<std::uint64_t, std::uint64_t> dist{{0, 1}};
  for (int i = 0; i < s; ++i) {
    std::map<std::uint64_t, std::uint64_t> next;
    for (const auto& [m, c] : dist) {
      for (auto p : powers) next[m + p] += c;
    }
    dist = std::move(next);
  }
  return dist;
}

std::vector<std::uint64_t> powers_of(const VarRange& v) {
  std::vector<std::uint64_t> out;
  for (const auto& [m, c] : v.terms()) out.push_back(m);
  return out;
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("x^2 + y^3 up to 20") {
  const auto sig = plain_signature({2, 3}, 20);
  const auto t = build_table(sig, 20, TableMode::Count);
  std::vector<std::uint64_t> hit;
  for (std::uint64_t m = 0; m <= 20; ++m) {
    if (t.representable(m)) hit.push_back(m);
  }
  CHECK(hit == std::vector<std::uint64_t>{2, 5, 9, 10, 12, 17});
  const auto ex = exceptional_set(t);
  CHECK(std::find(ex.values.begin(), ex.values.end(), 3) != ex.values.end());
  CHECK(ex.largest == 20);
  CHECK(sig.minimal_sum() == 2);
  CHECK_THROWS_AS(t.count(21), Error);
}

TEST_CASE("a single square") {
  const auto t = build_table(plain_signature({2}, 1000), 1000, TableMode::Count);
  for (std::uint64_t m = 0; m <= 1000; ++m) {
    const auto r = static_cast<std::uint64_t>(std::sqrt(double(m)));
    CHECK(t.count(m) == ((m > 0 && r * r == m) ? 1u : 0u));
  }
}

TEST_CASE("theorem signature: table against meet-in-the-middle") {
  const std::uint64_t N = 1000000;
  const auto sig = theorem_signature(N);
  CHECK(sig.variables() == 13);
  CHECK(sig.minimal_sum() == 13);

  const auto bits = build_table(sig, N, TableMode::Bitset);
  const auto split = balanced_split(sig, N);
  const auto mitm = mitm_bitset(sig, N, split);
  CHECK(bits.bits == mitm.bits);

  const auto ex = exceptional_set(bits);
  for (std::uint64_t n = 1; n < 13; ++n) CHECK(ex.values[n - 1] == n);
  CHECK(ex.largest == golden::kLargestExceptional);
  CHECK(ex.values.size() == golden::kExceptionalCount);

  const auto counts = build_table(sig, N, TableMode::Count);
  CHECK(counts.saturated == 0);
  CHECK(saturation_consistent(counts, bits));
  std::mt19937_64 rng(7);
  std::vector<std::uint64_t> ms;
  for (int i = 0; i < 1000; ++i) ms.push_back(rng() % (N + 1));
  const auto exact = mitm_counts(sig, ms, split);
  for (std::size_t i = 0; i < ms.size(); ++i) CHECK(counts.count(ms[i]) == exact[i]);
  for (std::uint64_t m = 0; m <= N; m += 997) CHECK(counts.representable(m) == bits.representable(m));
}

TEST_CASE("every split of the variables gives the same bitset") {
  const std::uint64_t N = 50000;
  const auto sig = plain_signature({2, 2, 3, 5, 7}, N);
  const auto bits = build_table(sig, N, TableMode::Bitset);
  for (std::size_t split = 1; split < sig.variables(); ++split) {
    CHECK(mitm_bitset(sig, N, split).bits == bits.bits);
  }
  CHECK_THROWS_AS(mitm_bitset(sig, N, 0), Error);
}

TEST_CASE("convolution order does not matter") {
  const std::uint64_t N = 100000;
  auto sig = plain_signature({2, 3, 4, 5, 6}, N);
  const auto base = build_table(sig, N, TableMode::Count);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(sig.terms.begin(), sig.terms.end(), rng);
    CHECK(build_table(sig, N, TableMode::Count).counts == base.counts);
  }
}

TEST_CASE("saturation check") {
  RepresentationTable counts, bits;
  counts.N = bits.N = 10;
  counts.counts.assign(11, 0);
  counts.counts[5] = UINT32_MAX;
  counts.saturated = 1;
  bits.mode = TableMode::Bitset;
  bits.bits.assign(1, 0);
  CHECK_FALSE(saturation_consistent(counts, bits));
  bits.bits[0] = 1ULL << 5;
  CHECK(saturation_consistent(counts, bits));
}

TEST_CASE("table budget and degrees") {
  CHECK_THROWS_WITH_AS(build_table(plain_signature({2}, 1000), 1000, TableMode::Count, 500),
                       "table budget exceeded; use chunked mode", Error);
  CHECK_THROWS_AS(plain_signature({1, 2}, 10), Error);
}

TEST_CASE("table files round trip") {
  const auto sig = plain_signature({2, 3, 5}, 5000);
  for (auto mode : {TableMode::Count, TableMode::Bitset}) {
    const auto t = build_table(sig, 5000, mode);
    const auto path = temp_file("unlike_table_roundtrip.bin");
    write_table(t, path);
    CHECK(std::filesystem::file_size(path) ==
          16 + (mode == TableMode::Count ? 4 * 5001 : 8 * ((5001 + 63) / 64)));
    const auto back = read_table(path);
    CHECK(back.N == t.N);
    CHECK(back.mode == t.mode);
    CHECK(back.counts == t.counts);
    CHECK(back.bits == t.bits);
  }
  const auto bad = temp_file("unlike_table_bad.bin");
  std::ofstream(bad) << "nonsense";
  CHECK_THROWS_WITH_AS(read_table(bad), "not a representation table", Error);
  CHECK_THROWS_AS(read_table(temp_file("unlike_no_such_table.bin")), Error);
}

TEST_CASE("second moment counts distinct powers") {
  const auto f5 = smooth(5, 40, 5);
  MeanValueSpec spec;
  spec.factors.emplace_back(f5, 1);
  const auto mv = mean_value(spec);
  CHECK(mv.integral);
  CHECK(mv.exact == f5.terms().size());
}

TEST_CASE("fourth moment of f_3 against the quadruple loop") {
  const auto spec = parse_mean_value_spec("f3(Y=30,R=7)^4");
  const auto mv = mean_value(spec);
  const auto p = powers_of(spec.factors[0].first);
  std::uint64_t loop = 0;
  for (auto a : p)
    for (auto b : p)
      for (auto c : p)
        for (auto d : p) loop += (a + b == c + d);
  CHECK(mv.exact == loop);
  CHECK(mv.value == double(loop));
}

TEST_CASE("mean value is symmetric in the two sides") {
  EquationSpec eq;
  eq.left = {smooth(2, 60, 7), smooth(3, 25, 5), smooth(3, 25, 5)};
  eq.right = {smooth(2, 60, 7), smooth(4, 12, 3), smooth(4, 12, 3), smooth(3, 25, 5)};
  EquationSpec swapped{eq.right, eq.left};
  CHECK(mean_value(eq).exact == mean_value(swapped).exact);
  CHECK(mean_value(eq).exact > 0);
}

TEST_CASE("S_{k,3} splits into diagonal and off-diagonal x") {
  const auto f4 = smooth(4, 20, 5);
  const auto fk = smooth(5, 20, 5);
  const auto total = mean_value(parse_mean_value_spec("f4(Y=20,R=5)^2*f5(Y=20,R=5)^6")).exact;

  const auto x = powers_of(f4);
  const auto r3 = power_sums(powers_of(fk), 3);
  std::uint64_t u3 = 0;
  for (const auto& [m, c] : r3) u3 += c * c;
  std::uint64_t off = 0;
  for (auto x1 : x) {
    for (auto x2 : x) {
      if (x1 == x2) continue;
      // x1⁴ + Σy = x2⁴ + Σz.
      for (const auto& [m, c] : r3) {
        if (m + x1 < x2) continue;
        const auto it = r3.find(m + x1 - x2);
        if (it != r3.end()) off += c * it->second;
      }
    }
  }
  CHECK(total == x.size() * u3 + off);
  CHECK(off > 0);
}

TEST_CASE("mean value spec parsing") {
  const auto s = parse_mean_value_spec(" g5(R=20, r=2)^2 * F2(X=100)^4 ");
  REQUIRE(s.factors.size() == 2);
  CHECK(s.factors[0].first.kind == RangeKind::PrimeProduct);
  CHECK(s.factors[0].first.r == 2);
  CHECK(s.factors[1].second == 2);
  CHECK_THROWS_WITH_AS(parse_mean_value_spec(""), "empty mean value spec", Error);
  CHECK_THROWS_WITH_AS(parse_mean_value_spec("f3(Y=30,R=7)^3"), doctest::Contains("exponent must be even"), Error);
  CHECK_THROWS_WITH_AS(parse_mean_value_spec("q3(Y=30)^2"), doctest::Contains("unknown factor kind"), Error);
  CHECK_THROWS_WITH_AS(parse_mean_value_spec("f3(Z=30)^2"), doctest::Contains("unknown key Z"), Error);
  CHECK_THROWS_WITH_AS(parse_mean_value_spec("f3(Y=30^2"), doctest::Contains("missing ')'"), Error);
  CHECK_THROWS_WITH_AS(mean_value(parse_mean_value_spec("x2(N=1000000000000)^12"), 1000000),
                       doctest::Contains("mean value infeasible"), Error);
}

TEST_CASE("weighted second moment is the sum of squared weights") {
  const auto spec = parse_mean_value_spec("F2(X=200)^2");
  const auto mv = mean_value(spec);
  CHECK_FALSE(mv.integral);
  double sq = 0;
  for (const auto& [m, w] : spec.factors[0].first.terms()) sq += w * w;
  CHECK(mv.value == doctest::Approx(sq).epsilon(1e-14));
}

TEST_CASE("restricted mean value closes against Parseval") {
  GlobalParameters p;
  p.n = 100000;
  const sums::ExponentialSum f({sums::SumKind::Smooth, 3, p});
  const auto range = range_for(f.spec());
  double prev = -1;
  for (double Q : {25.0, 50.0, 100.0}) {
    const auto sys = arcs::build(p, Q, false);
    const auto r = restricted_mean_value(f, range, 2, sys);
    CHECK(std::abs(r.major + r.minor_quadrature - r.exact_total) <= 1e-4 * r.exact_total);
    CHECK(r.minor == doctest::Approx(r.exact_total - r.major));
    CHECK(r.major >= prev);
    prev = r.major;
  }
}

TEST_CASE("weighted count of x^2 + y^3 against the double loop") {
  GlobalParameters p;
  const auto x_lo = static_cast<std::uint64_t>(std::ceil(p.X(2) / 2)), x_hi = static_cast<std::uint64_t>(p.X(2));
  const auto y_lo = static_cast<std::uint64_t>(std::ceil(p.X(3) / 2)), y_hi = static_cast<std::uint64_t>(p.X(3));
  for (std::uint64_t n = 1000000; n < 1000300; ++n) {
    double loop = 0;
    std::size_t sols = 0;
    for (std::uint64_t x = x_lo; x <= x_hi; ++x) {
      for (std::uint64_t y = y_lo; y <= y_hi; ++y) {
        if (x * x + y * y * y != n) continue;
        loop += sums::weight(double(x) / p.X(2)) * sums::weight(double(y) / p.X(3));
        ++sols;
      }
    }
    std::size_t got = 0;
    CHECK(weighted_count(n, {2, 3}, p, &got) == doctest::Approx(loop).epsilon(1e-12));
    CHECK(got == sols);
  }
  CHECK(weighted_count(5, {2, 3}, p) == 0.0);
  CHECK_THROWS_AS(weighted_count(5, {}, p), Error);
}

TEST_CASE("13-variable weighted counts sum to the product of the factor sizes") {
  GlobalParameters p;
  p.n = 10000;
  p.R = 3;
  for (int k = 5; k <= 11; ++k) p.r_k[k] = 1;

  double product = 1;
  std::uint64_t top = 0;
  auto account = [&](const VarRange& v) {
    double s = 0;
    std::uint64_t hi = 0;
    for (const auto& [m, c] : v.terms()) {
      s += c;
      hi = std::max(hi, m);
    }
    product *= s;
    top += hi;
  };
  for (int k : {2, 3}) {
    VarRange v;
    v.kind = RangeKind::Weighted;
    v.k = k;
    v.X = p.X(k);
    account(v);
  }
  for (int k : {4, 12, 13, 14}) account(smooth(k, p.Y(k), p.R));
  for (int k = 5; k <= 11; ++k) {
    VarRange v;
    v.kind = RangeKind::PrimeProduct;
    v.k = k;
    v.R = p.R;
    v.r = 1;
    account(v);
  }

  const auto table = weighted_count_table(top, p);
  double total = 0;
  for (double c : table) total += c;
  CHECK(total == doctest::Approx(product).epsilon(1e-12));
  for (std::uint64_t n : {p.n, p.n + 17, top / 2, top}) {
    CHECK(weighted_count_full(n, p) == doctest::Approx(table[n]).epsilon(1e-12).scale(1e-300));
  }
}
