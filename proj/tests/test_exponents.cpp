#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "unlike/error.hpp"
#include "unlike/exponents.hpp"

using namespace unlike;
using namespace unlike::exponents;

namespace {

const PermissibleExponentTable& cited() {
  static const auto t = PermissibleExponentTable::cited();
  return t;
}

}  // namespace

TEST_CASE("cited table holds exactly the shipped values") {
  const auto& t = cited();
  CHECK(t.entries().size() == 21);
  CHECK(t.lambda(5, 4) == 4.4386563);
  CHECK(t.lambda(11, 11) == 13.7292224);
  CHECK(t.lambda(14, 10) == 11.6442024);
  CHECK(t.lambda(14, 15) == 19.1785686);
  CHECK(t.lambda(4, Rational(7, 2)) == 3.849408);
  for (const auto& [key, lambda] : t.entries()) {
    CHECK(lambda >= key.s.to_double());
    CHECK(lambda <= 2 * key.s.to_double());
  }
}

TEST_CASE("data file and compiled table agree") {
  const auto file = PermissibleExponentTable::load(std::string(UNLIKE_DATA_DIR) + "/permissible_exponents.txt");
  CHECK(file.entries() == cited().entries());
}

TEST_CASE("table rejects values outside [s, 2s] and unknown keys") {
  PermissibleExponentTable t;
  CHECK_THROWS_WITH_AS(t.set(5, 4, 9.0), doctest::Contains("outside"), Error);
  CHECK_THROWS_WITH_AS(t.set(5, 4, 3.9), doctest::Contains("outside"), Error);
  CHECK_THROWS_WITH_AS(cited().lambda(3, 2), doctest::Contains("unknown permissible exponent"), Error);
  std::istringstream bad("5 4 1\n");
  CHECK_THROWS_AS(PermissibleExponentTable::parse(bad), Error);
}

TEST_CASE("alpha_{k,s}") {
  CHECK(std::abs(alpha_ks(5, 4, cited()) - 0.7122687) <= 1e-7);
  CHECK(std::abs(alpha_ks(4, Rational(7, 2), cited()) - 0.787648) <= 1e-7);
  CHECK(std::abs(alpha_ks(12, 13, cited()) - 0.7824157) <= 2e-7);
  PermissibleExponentTable t;
  t.set(6, 3, 6.0);
  CHECK(alpha_ks(6, 3, t) == 0.0);
}

TEST_CASE("alpha_{k,s} strictly decreases in lambda") {
  for (const auto& [key, lambda] : cited().entries()) {
    auto t = cited();
    const double hi = std::min(lambda + 1e-6, 2 * key.s.to_double());
    t.set(key.k, key.s, hi);
    if (hi > lambda) CHECK(alpha_ks(key.k, key.s, t) < alpha_ks(key.k, key.s, cited()));
  }
}

TEST_CASE("Holder systems") {
  auto k1 = k1_system();
  const Rational s7 = solve_holder(k1);
  CHECK(std::abs(s7.to_double() - 6.3974151) <= 1e-7);
  CHECK(std::abs(k1.reciprocal_sum() - 1) <= 1e-12);

  auto k2 = k2_system();
  const Rational s4 = solve_holder(k2);
  CHECK(std::abs(4 * s4.to_double() - 7.0179948) <= 1e-6);

  HolderSystem two;
  two.weights[1] = 2;
  two.free_index = 2;
  CHECK(solve_holder(two) == Rational(2));

  HolderSystem bad;
  bad.weights[1] = 1;
  bad.free_index = 2;
  CHECK_THROWS_WITH_AS(solve_holder(bad), "infeasible Hölder system", Error);

  CHECK_THROWS_WITH_AS(alpha_K1(cited(), k1_system()), "Hölder weights missing", Error);
}

TEST_CASE("random feasible Holder systems close to one") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(1, 6), num(2, 40);
  for (int trial = 0; trial < 500; ++trial) {
    HolderSystem h;
    const int m = size(rng);
    double used = 0;
    for (int i = 0; i < m; ++i) {
      const Rational w(num(rng) * m + 1, 2);
      if (used + 1 / w.to_double() >= 0.95) break;
      used += 1 / w.to_double();
      h.weights[i + 10] = w;
    }
    h.free_index = 1;
    const Rational s = solve_holder(h);
    CHECK(s.to_double() > 1);
    for (const auto& [k, w] : h.weights) CHECK(w.to_double() > 1);
    CHECK(std::abs(h.reciprocal_sum() - 1) <= 1e-12);
  }
}

TEST_CASE("alpha(K1) and delta1") {
  auto k1 = k1_system();
  solve_holder(k1);
  const auto a = alpha_K1(cited(), k1);
  CHECK(std::abs(a.alpha - 0.7508985) <= 2e-6);
  CHECK(std::abs(a.delta1 - 0.0008985) <= 2e-6);
  CHECK(a.delta1 == doctest::Approx(a.alpha - 0.75));
  CHECK(a.delta1 > 0);

  // Convex combination: bounded by the inputs.
  double lo = 1, hi = 0;
  for (const auto& [k, w] : k1.weights) {
    const double x = alpha_ks(k, w, cited());
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double x7 = alpha_ks(7, 6, cited()), y7 = alpha_ks(7, 7, cited());
  lo = std::min({lo, x7, y7});
  hi = std::max({hi, x7, y7});
  CHECK(a.alpha >= lo);
  CHECK(a.alpha <= hi);
}

TEST_CASE("alpha(K1) with every input at 3/4 is exactly 3/4") {
  auto k1 = k1_system();
  solve_holder(k1);
  PermissibleExponentTable t;
  for (const auto& [key, lambda] : cited().entries()) {
    (void)lambda;
    // α = (2s − λ)/k = 3/4 ⇔ λ = 2s − 3k/4, clipped into [s, 2s] when needed.
    const double target = 2 * key.s.to_double() - 0.75 * key.k;
    if (target >= key.s.to_double()) t.set(key.k, key.s, target);
  }
  const auto a = alpha_K1(t, k1);
  CHECK(a.alpha == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("theta and sigma") {
  const auto t134 = theta_sigma(13, 4, cited());
  CHECK(std::abs(t134.theta - 0.01721257) <= 5e-7);
  CHECK(std::abs(t134.sigma - 0.58202682) <= 5e-7);
  const auto t144 = theta_sigma(14, 4, cited());
  CHECK(std::abs(t144.theta - 0.01384513) <= 5e-7);
  CHECK(std::abs(t144.sigma - 0.5553779) <= 5e-7);
  const auto t145 = theta_sigma(14, 5, cited());
  CHECK(std::abs(t145.theta - 0.02117723) <= 5e-7);
  CHECK(std::abs(t145.sigma - 0.6482762) <= 5e-7);
  CHECK_THROWS_WITH_AS(theta_sigma(12, 4, cited()), "theta/sigma undefined for pair", Error);

  for (auto [k, s] : {std::pair{13, 4}, {14, 4}, {14, 5}}) {
    const auto ts = theta_sigma(k, s, cited());
    const auto [lhs, rhs] = theta_balance(k, s, ts.theta, cited());
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("theta vanishes when lambda_{k,2s} = 2 lambda_{k,s}") {
  auto t = cited();
  const double l = t.lambda(13, 4);
  t.set(13, 8, 2 * l);
  const auto ts = theta_sigma(13, 4, t);
  CHECK(std::abs(ts.theta) <= 1e-15);
  CHECK(ts.sigma == doctest::Approx(0.25 + l / 13));
}

TEST_CASE("sigma primes") {
  const auto sp = sigma_primes(cited());
  CHECK(std::abs(sp.sp13_4 - 0.5630657) <= 5e-7);
  CHECK(std::abs(sp.sp14_4 - 0.5399863) <= 5e-7);
  CHECK(std::abs(sp.sp14_5 - 0.6321008) <= 5e-7);
  CHECK(sp.lt13_4);
  CHECK(sp.lt14_4);
  CHECK(sp.lt14_5);
}

TEST_CASE("lambda and rho") {
  const auto lr = solve_lambda_rho(cited());
  CHECK(std::abs(lr.u1 - 0.4827948) <= 2e-6);
  CHECK(std::abs(lr.u2 - 0.5750298) <= 2e-6);
  CHECK(std::abs(lr.lambda - 0.9155538) <= 2e-6);
  CHECK(std::abs(lr.rho - 0.004453) <= 2e-6);
  CHECK(std::abs(lr.rho_prime - 0.0109875) <= 2e-6);
  CHECK(lr.lambda > 2.0 / 3);
  CHECK(lr.lambda < 1);
  CHECK(lr.rho > 0);
  CHECK(lr.lambda == doctest::Approx(1 / (1 + lr.u2 - lr.u1)));
}

TEST_CASE("alpha(K2) and delta2") {
  auto k2 = k2_system();
  solve_holder(k2);
  const double a2 = alpha_K2(cited(), k2);
  CHECK(std::abs(a2 - 0.7834034) <= 2e-6);
  const auto lr = solve_lambda_rho(cited());
  const double d2 = delta2(kDeclaredRho, lr.lambda, a2);
  CHECK(std::abs(d2 - 0.001651382) <= 3e-6);
  CHECK(d2 > 0);
  CHECK(delta2(0, 1, 1) == doctest::Approx(2.0 / 9));
  const double rho = 0.003, lambda = 0.9;
  CHECK(std::abs(delta2(rho, lambda, 1 + 5 * rho / lambda - 2 / (9 * lambda))) <= 1e-15);
}

// α = 1 is out of reach for (4, 7/2) since λ ≥ s caps α at 7/8; any
// common value shows the same thing.
TEST_CASE("alpha(K2) with every alpha equal returns that value") {
  auto k2 = k2_system();
  solve_holder(k2);
  for (double c : {0.5, 0.8, 0.875}) {
    PermissibleExponentTable t;
    for (const auto& [key, lambda] : cited().entries()) {
      (void)lambda;
      const double target = 2 * key.s.to_double() - c * key.k;
      if (target >= key.s.to_double()) t.set(key.k, key.s, target);
    }
    CHECK(alpha_K2(t, k2) == doctest::Approx(c).epsilon(1e-14));
  }
}

TEST_CASE("arc exponents") {
  const auto e = arc_exponents(kDeclaredRho);
  CHECK(e.q2_exp < kQ2Ceiling);
  CHECK(e.check);
  CHECK(e.q2_exp < e.q1_exp);
  CHECK(std::abs(e.q1_exp - 0.4767) < 5e-4);
  CHECK(std::abs((e.q1_exp - e.q2_exp) - (1.0 / 36 - kDeclaredRho)) <= 1e-12);
  CHECK(arc_exponents(0).q2_exp == doctest::Approx(4.0 / 9));
}

TEST_CASE("verify_all passes on the cited table") {
  const auto rows = verify_all(cited());
  CHECK(rows.size() >= 25);
  for (const auto& r : rows) {
    INFO(r.name, " computed=", r.computed, " expected=", r.paper_value);
    CHECK(r.pass);
    CHECK(r.pass == evaluate(r));
  }
  CHECK(all_pass(rows));
}

TEST_CASE("perturbing lambda_{5,4} breaks alpha(K1)") {
  auto t = cited();
  t.set(5, 4, t.lambda(5, 4) + 0.1);
  const auto rows = verify_all(t);
  bool alpha_failed = false;
  for (const auto& r : rows) {
    if (r.name == "alpha(K1)") alpha_failed = !r.pass;
  }
  CHECK(alpha_failed);
  CHECK_FALSE(all_pass(rows));
}

TEST_CASE("missing input shows as failed rows, not a crash") {
  auto t = cited();
  t.erase(13, 8);
  std::vector<ConstantCheck> rows;
  CHECK_NOTHROW(rows = verify_all(t));
  bool saw_failed = false;
  for (const auto& r : rows) {
    if (!r.pass && !r.detail.empty()) saw_failed = true;
  }
  CHECK(saw_failed);
}

TEST_CASE("shifted table moves delta by about 1e-10") {
  const auto rep = compute_report(cited());
  CHECK(std::abs(rep.delta1_shifted - rep.delta1) < 1e-9);
  CHECK(std::abs(rep.delta2_shifted - rep.delta2) < 1e-9);
  CHECK(rep.delta1_shifted != rep.delta1);
}
