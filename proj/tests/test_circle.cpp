#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "golden.hpp"
#include "unlike/arith.hpp"
#include "unlike/circle.hpp"
#include "unlike/counting.hpp"
#include "unlike/error.hpp"
#include "unlike/sums.hpp"

using namespace unlike;
using namespace unlike::circle;

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// A(q) straight from the definition, one complete sum per factor and unit.
std::complex<double> A_direct(std::uint64_t q, std::uint64_t n, const std::vector<LocalFactor>& sig) {
  std::complex<double> total = 0;
  int c = 0, d = 0;
  for (const auto& f : sig) (f.units_only ? d : c) += 1;
  for (std::uint64_t a = 1; a <= q; ++a) {
    if (arith::gcd(a, q) != 1) continue;
    std::complex<double> prod = 1;
    for (const auto& f : sig) {
      const auto s = f.units_only ? arith::coprime_sum(q, a, f.k) : arith::complete_sum(q, a, f.k);
      prod *= std::complex<double>(s.re, s.im);
    }
    const double t = static_cast<double>((a * (n % q)) % q) / static_cast<double>(q);
    total += prod * std::polar(1.0, -2 * std::numbers::pi * t);
  }
  return total / (std::pow(double(q), c) * std::pow(double(arith::euler_phi(q)), d));
}

}  // namespace

TEST_CASE("A(q) small values") {
  const auto full = full_signature();
  CHECK(full.size() == 13);
  CHECK(A_of_q(1, 1000000, full) == 1.0);
  CHECK(std::abs(A_of_q(2, 1000000, full)) <= 1e-15);
  const auto two = plain_signature({2, 3});
  CHECK(A_of_q(1, 17, two) == 1.0);
  CHECK(std::abs(A_of_q(2, 17, two)) <= 1e-15);
  CHECK_THROWS_AS(A_of_q(0, 1, two), Error);
}

TEST_CASE("A(q) agrees with the definition") {
  const auto two = plain_signature({2, 3});
  for (std::uint64_t q = 1; q <= 40; ++q) {
    for (std::uint64_t n : {1ULL, 12ULL, 1000000ULL}) {
      const auto fast = A_of_q_complex(q, n, two);
      const auto slow = A_direct(q, n, two);
      CHECK(std::abs(fast - slow) <= 1e-12);
    }
  }
  const auto full = full_signature();
  for (std::uint64_t q : {3, 7, 13, 79}) {
    CHECK(std::abs(A_of_q_complex(q, 1000000, full) - A_direct(q, 1000000, full)) <= 1e-12);
  }
}

TEST_CASE("A(q) is real and multiplicative on coprime moduli") {
  const auto two = plain_signature({2, 3});
  for (std::uint64_t q = 1; q <= 200; ++q) {
    CHECK(std::abs(A_of_q_complex(q, 1000000, two).imag()) <= 1e-9);
  }
  // Treated as a diagnostic in the module; for these factors it holds.
  for (std::uint64_t q1 = 2; q1 <= 12; ++q1) {
    for (std::uint64_t q2 = 2; q2 <= 12; ++q2) {
      if (arith::gcd(q1, q2) != 1) continue;
      const double lhs = A_of_q(q1 * q2, 1000000, two);
      const double rhs = A_of_q(q1, 1000000, two) * A_of_q(q2, 1000000, two);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("13-variable A(p) decays like p^{-7/2}") {
  const auto full = full_signature();
  double worst = 0;
  std::uint64_t at = 0;
  for (std::uint64_t p = 2; p <= 200; ++p) {
    if (!is_prime(p)) continue;
    const double r = std::abs(A_of_q(p, 1000000, full)) * std::pow(double(p), 3.5);
    if (r > worst) {
      worst = r;
      at = p;
    }
  }
  CHECK(at == 79);
  CHECK(worst == doctest::Approx(golden::kSeriesConstant).epsilon(1e-6));
}

TEST_CASE("singular series partial sums") {
  const auto full = full_signature();
  const auto s = singular_series(1000000, 400, full);
  CHECK(s.at(1) == 1.0);
  CHECK(s.at(2) == 1.0);
  CHECK(s.max_imag <= 1e-9);
  CHECK(s.value() > 0);
  // The increments sit far below the spacing of doubles near 1, so the
  // Cauchy comparison uses the direct block sums.
  const double late = std::abs(s.increment(200, 400));
  const double early = std::abs(s.increment(100, 200));
  CHECK(late < early);
  CHECK(s.increment(1, 400) == doctest::Approx(s.value() - 1).epsilon(1e-6).scale(1));
  CHECK(s.increment(5, 5) == 0.0);
  CHECK_THROWS_AS(s.increment(10, 401), Error);
  double direct = 0;
  for (std::uint64_t q = 201; q <= 400; ++q) direct += s.Aq[q - 1].second;
  CHECK(s.increment(200, 400) == doctest::Approx(direct).epsilon(1e-12));
  CHECK(s.tail_estimate == doctest::Approx(s.C * (2.0 / 3) * std::pow(400.0, -2.5)));
  CHECK_THROWS_AS(singular_series(1, 0, full), Error);
}

TEST_CASE("x^2 + y^3 series agrees with a direct sum") {
  const auto two = plain_signature({2, 3});
  const auto s = singular_series(1000001, 60, two);
  double sum = 0;
  for (std::uint64_t q = 1; q <= 60; ++q) {
    sum += A_direct(q, 1000001, two).real();
    CHECK(s.at(q) == doctest::Approx(sum).epsilon(1e-10).scale(1));
  }
}

TEST_CASE("singular integral integrand at zero") {
  GlobalParameters p;
  IntegralSpec spec;
  const auto v0 = integrand_v(0, p, spec);
  CHECK(v0.real() > 0);
  CHECK(v0.imag() == 0.0);
  const double expect = sums::oscillatory_v(2, 0, p).value.real() * sums::oscillatory_v(3, 0, p).value.real();
  CHECK(v0.real() == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("x^2 + y^3 singular integral") {
  GlobalParameters p;
  IntegralSpec spec;
  const auto I = singular_integral(1000000, 0, p, spec);
  CHECK(I.decayed);
  CHECK(I.accurate);
  CHECK(std::abs(I.imag) <= 1e-9 * std::abs(I.value));
  CHECK(I.value > 0);

  // Doubling B once the integrand has decayed changes little.
  const auto I2 = singular_integral(1000000, 2 * I.B, p, spec);
  CHECK(std::abs(I2.value - I.value) <= 1e-4 * std::abs(I.value));

  // The β-integral collapses to a one-dimensional x-integral.
  const double direct = delta_integral_2(1000000, 2, 3, p);
  CHECK(I.value == doctest::Approx(direct).epsilon(1e-4));

  // Truncating early leaves the decay flag down.
  const auto short_range = singular_integral(1000000, I.B / 64, p, spec);
  CHECK_FALSE(short_range.decayed);
}

TEST_CASE("13-variable singular integral at desk parameters") {
  GlobalParameters p;
  const auto I = singular_integral(p.n, 0, p, full_integral_spec());
  // Σ u^k over the prime products starts near 10²², far above n.
  CHECK(I.support_shortcut);
  CHECK(I.value == 0.0);
  CHECK(I.bound < 1e-20 * I.at_zero);
  CHECK(I.r_prime == 14);
  CHECK(I.constants > 1);

  GlobalParameters small;
  small.R = 3;
  for (int k = 5; k <= 11; ++k) small.r_k[k] = 1;
  const auto J = singular_integral(small.n, 0, small, full_integral_spec());
  CHECK_FALSE(J.support_shortcut);
  CHECK(J.accurate);
  CHECK(std::abs(J.imag) <= 1e-9 * std::abs(J.value));

  GlobalParameters heavy;
  heavy.R = 3;
  heavy.r_k[11] = 1;
  CHECK_THROWS_WITH_AS(singular_integral(heavy.n, 0, heavy, full_integral_spec()),
                       doctest::Contains("singular integral infeasible"), Error);
}

TEST_CASE("main term comparison bookkeeping") {
  GlobalParameters p;
  const auto rep = main_term_vs_count(1000000, 8, {2, 3}, p);
  REQUIRE(rep.rows.size() == 8);
  double count = 0, main = 0;
  for (const auto& r : rep.rows) {
    CHECK(r.count == doctest::Approx(counting::weighted_count(r.n, {2, 3}, p)));
    CHECK(r.main == doctest::Approx(r.series * r.integral));
    count += r.count;
    main += r.main;
  }
  CHECK(rep.pooled_ratio == doctest::Approx(count / main));

  // Below the smallest admissible sum the count vanishes.
  const auto low = main_term_vs_count(10, 3, {2, 3}, p);
  for (const auto& r : low.rows) CHECK(r.count == 0.0);
}
