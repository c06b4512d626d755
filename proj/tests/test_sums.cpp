#include <cmath>
#include <random>

#include "doctest.h"
#include "golden.hpp"
#include "unlike/arcs.hpp"
#include "unlike/arith.hpp"
#include "unlike/error.hpp"
#include "unlike/sums.hpp"

using namespace unlike;
using namespace unlike::sums;

namespace {

GlobalParameters desk(std::uint64_t n = 1000000) {
  GlobalParameters p;
  p.n = n;
  return p;
}

std::vector<SumSpec> specs(const GlobalParameters& p) {
  return {{SumKind::Weighted, 2, p}, {SumKind::Weighted, 3, p}, {SumKind::Smooth, 4, p},
          {SumKind::Smooth, 12, p},  {SumKind::PrimeProduct, 5, p}, {SumKind::PrimeProduct, 7, p}};
}

}  // namespace

TEST_CASE("weight function") {
  CHECK(weight(0.75) == std::exp(-16.0));
  CHECK(weight(0.5) == 0);
  CHECK(weight(1.0) == 0);
  CHECK(weight(0.3) == 0);
  CHECK(weight(1.2) == 0);
  CHECK(weight(0.7) == doctest::Approx(weight(0.8)).epsilon(1e-12));
  for (double t = 0.51; t < 1; t += 0.01) CHECK(weight(t) > 0);
  CHECK(std::abs(weight_integral() - golden::kWeightIntegral) <= 1e-12 * golden::kWeightIntegral);
}

TEST_CASE("weight is smooth: bounded finite differences") {
  const double h = 1e-3;
  double worst = 0;
  for (double t = 0.45; t < 1.05; t += 1e-3) {
    const double d4 = weight(t + 2 * h) - 4 * weight(t + h) + 6 * weight(t) - 4 * weight(t - h) + weight(t - 2 * h);
    worst = std::max(worst, std::abs(d4) / std::pow(h, 4));
  }
  CHECK(std::isfinite(worst));
  CHECK(worst < 1e3);
}

TEST_CASE("sums at zero") {
  const auto p = desk();
  const ExponentialSum F2({SumKind::Weighted, 2, p});
  double direct = 0;
  for (int x = 500; x <= 1000; ++x) direct += weight(x / 1000.0);
  CHECK(F2.at(0).re == doctest::Approx(direct).epsilon(1e-13));
  CHECK(F2.terms() == 501);

  const ExponentialSum f4({SumKind::Smooth, 4, p});
  const auto Y = static_cast<std::uint64_t>(std::floor(p.Y(4)));
  CHECK(f4.at(0).re == static_cast<double>(arith::smooth_sieve(Y, p.R).members.size()));
  CHECK(y_prime(4, p) == f4.at(0).re);

  const ExponentialSum g5({SumKind::PrimeProduct, 5, p});
  const double pr = static_cast<double>(arith::primes_between(p.R / 2, p.R).size());
  CHECK(g5.at(0).re == std::pow(pr, p.r(5)));

  GlobalParameters empty = p;
  empty.R = 4;  // (2, 4] holds 3 only
  CHECK_NOTHROW(ExponentialSum({SumKind::PrimeProduct, 5, empty}));
  empty.R = 1;
  CHECK_THROWS_WITH_AS(ExponentialSum({SumKind::PrimeProduct, 5, empty}), "no primes in (R/2,R]", Error);
}

TEST_CASE("symmetry, periodicity and the trivial bound") {
  const auto p = desk();
  std::mt19937_64 rng(6);
  for (const auto& spec : specs(p)) {
    const ExponentialSum s(spec);
    const double zero = s.at(0).re;
    CHECK(s.at(0).abs() == doctest::Approx(zero));
    for (int i = 0; i < 50; ++i) {
      const double alpha = std::ldexp(static_cast<double>(rng() >> 34), -30);  // dyadic
      const auto v = s.at(alpha);
      const auto m = s.at(-alpha);
      const auto w = s.at(alpha + 1);
      INFO("k=", spec.k, " alpha=", alpha);
      CHECK(std::abs(v.re - m.re) <= 1e-12 * zero);
      CHECK(std::abs(v.im + m.im) <= 1e-12 * zero);
      CHECK(std::abs(v.re - w.re) <= 1e-12 * zero);
      CHECK(std::abs(v.im - w.im) <= 1e-12 * zero);
      CHECK(v.abs() <= zero * (1 + 1e-12));
    }
  }
}

TEST_CASE("oscillatory integral v_k") {
  const auto p = desk();
  for (int k : {2, 3}) {
    const auto v0 = oscillatory_v(k, 0, p);
    CHECK(v0.accurate);
    CHECK(v0.value.real() == doctest::Approx(p.X(k) * golden::kWeightIntegral).epsilon(1e-10));
    CHECK(std::abs(v0.value.imag()) <= 1e-20);
  }
  // Strict decay across n|β| = 1, 10, 100, each decade by more than 100×.
  const double n = 1e6;
  const double a1 = std::abs(oscillatory_v(2, 1 / n, p).value);
  const double a10 = std::abs(oscillatory_v(2, 10 / n, p).value);
  const double a100 = std::abs(oscillatory_v(2, 100 / n, p).value);
  CHECK(a10 < 1e-2 * a1);
  CHECK(a100 < 1e-2 * a10);
  // Reference magnitudes from the numpy oracle.
  CHECK(a1 / 1000 == doctest::Approx(1.109e-8).epsilon(2e-3));
  CHECK(a10 / 1000 == doctest::Approx(1.17e-11).epsilon(1e-2));

  for (double nb : {0.0, 0.5, 3.0, 20.0}) {
    const auto q = oscillatory_v(2, nb / n, p).value;
    const auto m = oscillatory_v_midpoint(2, nb / n, p, 1000000);
    const double scale = std::abs(oscillatory_v(2, 0, p).value);
    CHECK(std::abs(q - m) <= 1e-6 * scale);
  }
  // Conjugate symmetry in β.
  const auto plus = oscillatory_v(3, 2.5 / n, p).value, minus = oscillatory_v(3, -2.5 / n, p).value;
  CHECK(std::abs(plus - std::conj(minus)) <= 1e-12 * std::abs(oscillatory_v(3, 0, p).value));
}

TEST_CASE("v_star") {
  GlobalParameters p = desk();
  p.R = 20;
  for (int r : {1, 2, 3}) {
    p.r_k[5] = r;
    const auto v = v_star(5, 0, p);
    CHECK(v.value.real() == doctest::Approx(std::pow(10.0, r) / std::pow(std::log(20.0), r)).epsilon(1e-15));
  }
  p.r_k[5] = 4;
  CHECK_THROWS_WITH_AS(v_star(5, 1e-9, p), "dimension beyond desk scale", Error);

  // r = 1 against a midpoint rule on [R/2, R].
  p.r_k[5] = 1;
  for (double beta : {1e-7, 3e-7, 1e-6}) {
    const auto v = v_star(5, beta, p);
    const int N = 400000;
    const double lo = 10, hi = 20, h = (hi - lo) / N;
    std::complex<double> m = 0;
    for (int i = 0; i < N; ++i) {
      const double x = lo + (i + 0.5) * h;
      const double ph = 2 * M_PI * std::fmod(std::pow(x, 5) * beta, 1.0);
      m += std::complex<double>(std::cos(ph), std::sin(ph)) * h;
    }
    m /= std::log(20.0);
    CHECK(std::abs(v.value - m) <= 1e-6 * std::abs(v_star(5, 0, p).value));
  }
}

TEST_CASE("v_tilde over v_star at zero tends to 1") {
  GlobalParameters p = desk();
  p.r_k[5] = 2;
  std::vector<double> gaps;
  for (std::uint64_t R : {1000, 10000, 100000}) {
    p.R = R;
    const double ratio = v_tilde(5, 0, p).value.real() / v_star(5, 0, p).value.real();
    CHECK(ratio > 1);
    gaps.push_back(ratio - 1);
  }
  CHECK(gaps[1] < gaps[0]);
  CHECK(gaps[2] < gaps[1]);
}

TEST_CASE("major arc approximants") {
  const auto p = desk();
  const arcs::ArcLabel one{1, 1, 0, arcs::ArcKind::Major};
  const auto F2 = major_approx(ApproxKind::F2star, 2, one, p);
  CHECK(std::abs(F2.value - oscillatory_v(2, 0, p).value) <= 1e-20);
  const auto f4 = major_approx(ApproxKind::FkSmoothStar, 4, one, p);
  CHECK(f4.value.real() == doctest::Approx(y_prime(4, p)));
  const auto g5 = major_approx(ApproxKind::GkStar, 5, one, p);
  CHECK(g5.value.real() == doctest::Approx(v_star(5, 0, p).value.real()));
  CHECK_THROWS_AS(major_approx(ApproxKind::F2star, 2, {1, 1, 0, arcs::ArcKind::Minor}, p), Error);
  // Near α = 0 the approximant tracks F₂ closely.
  const ExponentialSum F({SumKind::Weighted, 2, p});
  const auto near = major_approx(ApproxKind::F2star, 2, {1, 1, 2e-6, arcs::ArcKind::Major}, p);
  CHECK(std::abs(F.at(1 + 2e-6).value() - near.value) <= 1e-3 * F.at(0).re);
}

TEST_CASE("Delta_2 scan matches its golden value") {
  const auto scan = delta_scan(2, 100, desk(), 1000, golden::kDeltaSeed);
  CHECK(scan.samples == 1000);
  CHECK(std::abs(scan.max_ratio - golden::kDelta2Ratio) <= 0.05 * golden::kDelta2Ratio);
}

TEST_CASE("Delta_3 scan is finite and small against F_3(0)") {
  const auto p = desk();
  const auto scan = delta_scan(3, 20, p, 200, 17);
  const ExponentialSum F3({SumKind::Weighted, 3, p});
  CHECK(std::isfinite(scan.max_ratio));
  CHECK(scan.max_ratio * std::sqrt(20.0) < F3.at(0).re);
}

TEST_CASE("minor arc sup scan") {
  const auto p = desk();
  const auto s50 = minor_arc_sup_scan(2, 50, p, 100000);
  CHECK(s50.minor_points == golden::kMinorSupPoints);
  CHECK(s50.ratio == doctest::Approx(golden::kMinorSupRatio).epsilon(1e-6));
  const auto s100 = minor_arc_sup_scan(2, 100, p, 100000);
  CHECK(s100.sup <= s50.sup);
  CHECK(s100.minor_points < s50.minor_points);
}

TEST_CASE("Parseval over arcs") {
  const auto p = desk(100000);
  auto small = p;
  small.R = 7;  // primes 5 and 7, so the largest frequency is 7⁵
  small.r_k[5] = 1;
  const auto sys = arcs::build(p, 40, false);
  for (const auto& spec : {SumSpec{SumKind::Weighted, 2, p}, SumSpec{SumKind::Weighted, 3, p},
                           SumSpec{SumKind::Smooth, 3, p}, SumSpec{SumKind::PrimeProduct, 5, small}}) {
    const ExponentialSum s(spec);
    const auto r = moment_over_arcs(s, 1, sys);
    INFO("k=", spec.k);
    CHECK(r.major > 0);
    CHECK(r.minor > 0);
    CHECK(std::abs(r.total() - s.sum_sq_weights()) <= 1e-6 * s.sum_sq_weights());
  }
}

TEST_CASE("smooth and prime-product Parseval values are counts") {
  const auto p = desk();
  const ExponentialSum f({SumKind::Smooth, 3, p});
  CHECK(f.sum_sq_weights() == f.at(0).re);
  const ExponentialSum g({SumKind::PrimeProduct, 6, p});
  const auto tab = arith::tau_table(p.R, p.r(6));
  double sq = 0;
  for (const auto& [x, c] : tab.counts) sq += double(c) * double(c);
  CHECK(g.sum_sq_weights() == sq);
}

TEST_CASE("g_k factorization identity") {
  GlobalParameters p = desk();
  p.R = 14;  // primes 7, 11, 13; frequencies up to 14¹⁵ stay below 2⁶²
  p.r_k[5] = 3;
  const ExponentialSum g({SumKind::PrimeProduct, 5, p});
  std::mt19937_64 rng(8);
  for (double Q : {2.0, 30.0, 500.0}) {
    const int t = factorization_t(5, Q, p);
    CHECK(t >= 0);
    CHECK(t <= 3);
    for (int i = 0; i < 100; ++i) {
      const double alpha = std::ldexp(static_cast<double>(rng() >> 11), -53);
      const auto direct = g.at(alpha).value();
      const auto fact = g_factorized(5, t, alpha, p);
      CHECK(std::abs(direct - fact) <= 1e-9 * g.at(0).re);
    }
  }
}

TEST_CASE("frequency range guard") {
  GlobalParameters p = desk();
  p.R = 2000;
  p.r_k[11] = 3;
  CHECK_THROWS_AS(ExponentialSum({SumKind::PrimeProduct, 11, p}), Error);
}
