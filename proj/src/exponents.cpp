#include "unlike/exponents.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "unlike/error.hpp"

namespace unlike::exponents {

namespace {

constexpr const char* kCitedTable = R"(# permissible exponents lambda_{k,s}, version 1
5 4 1 4.4386563
6 6 1 7.2315633
7 6 1 7.0143820
7 7 1 8.5410894
8 8 1 9.8428621
9 9 1 11.1425026
10 10 1 12.4375675
11 11 1 13.7292224
13 4 1 4.0980713
14 4 1 4.0856057
14 5 1 5.2216967
13 8 1 9.0257224
14 8 1 8.9350975
14 10 1 11.6442024
12 3 1 3.0173811
13 3 1 3.0139128
14 3 1 3.0113494
12 13 1 16.6110110
13 14 1 17.8953488
14 15 1 19.1785686
4 7 2 3.849408
)";

// 1/4 + 1/12 + 1/13 + 1/14, the K₂ reciprocal mass that multiplies λ.
double k2_reciprocal_mass() { return 0.25 + 1.0 / 12 + 1.0 / 13 + 1.0 / 14; }

}  // namespace

PermissibleExponentTable PermissibleExponentTable::cited() {
  std::istringstream in(kCitedTable);
  return parse(in);
}

PermissibleExponentTable PermissibleExponentTable::parse(std::istream& in) {
  PermissibleExponentTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long k = 0, num = 0, den = 0;
    double lambda = 0;
    if (!(fields >> k)) continue;  // blank line
    if (!(fields >> num >> den >> lambda)) {
      throw Error("malformed exponent table line " + std::to_string(line_no));
    }
    table.set(static_cast<int>(k), Rational(num, den), lambda);
  }
  return table;
}

PermissibleExponentTable PermissibleExponentTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open exponent table " + path.string());
  return parse(in);
}

void PermissibleExponentTable::set(int k, Rational s, double lambda) {
  if (k < 2) throw Error("degree must be at least 2");
  if (s <= Rational(0)) throw Error("half-moment must be positive");
  const double sd = s.to_double();
  if (!(lambda >= sd && lambda <= 2 * sd)) {
    throw Error("exponent outside [s, 2s] for k=" + std::to_string(k) + " s=" + s.str());
  }
  entries_[{k, s}] = lambda;
}

double PermissibleExponentTable::lambda(int k, Rational s) const {
  const auto it = entries_.find({k, s});
  if (it == entries_.end()) {
    throw Error("unknown permissible exponent (k=" + std::to_string(k) + ", s=" + s.str() + ")");
  }
  return it->second;
}

PermissibleExponentTable PermissibleExponentTable::shifted(double eps) const {
  PermissibleExponentTable out;
  for (const auto& [key, value] : entries_) out.entries_[key] = value + eps;
  return out;
}

double alpha_ks(int k, Rational s, const PermissibleExponentTable& table) {
  return (2 * s.to_double() - table.lambda(k, s)) / k;
}

Rational HolderSystem::weight(int k) const {
  if (k == free_index) {
    if (!solved) throw Error("Hölder weights missing");
    return *solved;
  }
  const auto it = weights.find(k);
  if (it == weights.end()) throw Error("Hölder weights missing");
  return it->second;
}

double HolderSystem::reciprocal_sum() const {
  double sum = 0;
  for (const auto& [k, s] : weights) sum += 1.0 / s.to_double();
  if (solved) sum += 1.0 / solved->to_double();
  return sum;
}

HolderSystem k1_system() {
  HolderSystem sys;
  sys.weights = {{5, 4}, {6, 6}, {8, 8}, {9, 9}, {10, 10}, {11, 11}};
  sys.free_index = 7;
  return sys;
}

HolderSystem k2_system() {
  HolderSystem sys;
  sys.weights = {{12, Rational(13, 2)}, {13, 7}, {14, Rational(15, 2)}};
  sys.free_index = 4;
  return sys;
}

Rational solve_holder(HolderSystem& system) {
  Rational fixed(0);
  for (const auto& [k, s] : system.weights) {
    if (k == system.free_index) continue;
    if (s <= Rational(0)) throw Error("infeasible Hölder system");
    fixed = fixed + Rational(1) / s;
  }
  if (fixed >= Rational(1)) throw Error("infeasible Hölder system");
  system.solved = Rational(1) / (Rational(1) - fixed);
  return *system.solved;
}

AlphaK1 alpha_K1(const PermissibleExponentTable& table, const HolderSystem& system) {
  if (!system.solved) throw Error("Hölder weights missing");
  double alpha = 0;
  for (const auto& [k, s] : system.weights) {
    if (k == system.free_index) continue;
    alpha += alpha_ks(k, s, table) / s.to_double();
  }
  // The fractional moment s₇ ∈ (6,7) is interpolated between the 12th and
  // 14th moments.
  const double s7 = system.solved->to_double();
  alpha += (7.0 / s7 - 1.0) * alpha_ks(7, 6, table);
  alpha += (1.0 - 6.0 / s7) * alpha_ks(7, 7, table);
  return {alpha, alpha - 0.75};
}

ThetaSigma theta_sigma(int k, int s, const PermissibleExponentTable& table) {
  const bool supported = (k == 13 && s == 4) || (k == 14 && s == 4) || (k == 14 && s == 5);
  if (!supported) throw Error("theta/sigma undefined for pair");
  const double ls = table.lambda(k, s);
  const double l2s = table.lambda(k, 2 * s);
  const double gap = l2s - 2 * ls;
  ThetaSigma out;
  out.theta = (4.0 / k) * gap / (k + 1 + gap);
  out.sigma = 0.25 + s * out.theta / 2 + (1.0 / k - out.theta / 4) * ls;
  return out;
}

std::pair<double, double> theta_balance(int k, int s, double theta,
                                        const PermissibleExponentTable& table) {
  const double ls = table.lambda(k, s);
  const double l2s = table.lambda(k, 2 * s);
  const double lhs = 1 + theta + (4.0 / k - theta) * ls;
  const double rhs = 1 - (k - 1) / 2.0 * theta + 0.5 * (4.0 / k - theta) * l2s;
  return {lhs, rhs};
}

SigmaPrimes sigma_primes(const PermissibleExponentTable& table) {
  const auto t13_4 = theta_sigma(13, 4, table);
  const auto t14_4 = theta_sigma(14, 4, table);
  const auto t14_5 = theta_sigma(14, 5, table);
  SigmaPrimes out;
  out.sp13_4 = 1.0 / 13 + t13_4.theta / 4 + 0.25 + table.lambda(13, 3) / 13;
  out.sp14_4 = 1.0 / 14 + t14_4.theta / 4 + 0.25 + table.lambda(14, 3) / 14;
  out.sp14_5 = 1.0 / 14 + t14_5.theta / 4 + t14_4.sigma;
  out.lt13_4 = out.sp13_4 < t13_4.sigma;
  out.lt14_4 = out.sp14_4 < t14_4.sigma;
  out.lt14_5 = out.sp14_5 < t14_5.sigma;
  return out;
}

double kappa0(double lambda) { return 2.0 / 3 + 2 * lambda * k2_reciprocal_mass(); }

LambdaRho solve_lambda_rho(const PermissibleExponentTable& table) {
  LambdaRho out;
  out.u1 = 0.25;
  for (int k = 12; k <= 14; ++k) out.u1 += table.lambda(k, 3) / (3.0 * k);
  out.u2 = (0.25 + table.lambda(12, 3) / 12) / 3 + theta_sigma(13, 4, table).sigma / 4 +
           theta_sigma(14, 4, table).sigma / 12 + theta_sigma(14, 5, table).sigma / 3;
  // λ balances 1/3 + λu₁ against λ − 2/3 + λu₂.
  out.lambda = 1.0 / (1.0 + out.u2 - out.u1);
  out.kappa0 = kappa0(out.lambda);
  out.rho = 1.0 / 3 + out.lambda * out.u1 - (out.kappa0 - 7.0 / 9);
  const double mass = k2_reciprocal_mass();
  const double baseline_lambda = (4.0 / 3) / (1 + mass);
  out.rho_prime = 4.0 / 9 - baseline_lambda * mass;
  return out;
}

double alpha_K2(const PermissibleExponentTable& table, const HolderSystem& system) {
  if (!system.solved) throw Error("Hölder weights missing");
  double alpha = 0;
  for (const auto& [k, s] : system.weights) {
    if (k == system.free_index) continue;
    alpha += alpha_ks(k, Rational(2) * s, table) / s.to_double();
  }
  alpha += alpha_ks(4, Rational(7, 2), table) / system.solved->to_double();
  return alpha;
}

double delta2(double rho, double lambda, double alpha2) {
  return 2.0 / 9 - 5 * rho + lambda * alpha2 - lambda;
}

ArcExponents arc_exponents(double rho) {
  ArcExponents out;
  out.q1_exp = 0.5 - 1.0 / 36 + rho;
  out.q2_exp = 4.0 / 9 + 2 * rho;
  const double alt = 0.5 - 2 * (1.0 / 36 - rho);
  out.check = out.q2_exp < kQ2Ceiling && std::abs(out.q2_exp - alt) <= 1e-12;
  return out;
}

ExponentReport compute_report(const PermissibleExponentTable& table) {
  ExponentReport r;
  for (const auto& [key, lambda] : table.entries()) {
    r.alpha_ks[key] = (2 * key.s.to_double() - lambda) / key.k;
  }
  auto k1 = k1_system();
  r.s7 = solve_holder(k1).to_double();
  auto k2 = k2_system();
  r.s4 = solve_holder(k2).to_double();

  const auto a1 = alpha_K1(table, k1);
  r.alphaK1 = a1.alpha;
  r.delta1 = a1.delta1;

  for (const auto& [k, s] : {std::pair{13, 4}, {14, 4}, {14, 5}}) {
    const auto ts = theta_sigma(k, s, table);
    r.theta_ks[{k, s}] = ts.theta;
    r.sigma_ks[{k, s}] = ts.sigma;
  }
  const auto sp = sigma_primes(table);
  r.sigma_prime_ks[{13, 4}] = sp.sp13_4;
  r.sigma_prime_ks[{14, 4}] = sp.sp14_4;
  r.sigma_prime_ks[{14, 5}] = sp.sp14_5;

  const auto lr = solve_lambda_rho(table);
  r.u1 = lr.u1;
  r.u2 = lr.u2;
  r.lambda = lr.lambda;
  r.kappa0 = lr.kappa0;
  r.rho = lr.rho;
  r.rho_prime = lr.rho_prime;

  r.kappa1 = 0;
  for (int k = 5; k <= 11; ++k) r.kappa1 += 2.0 / k;
  r.kappa2 = 0;
  for (int k : {4, 12, 13, 14}) r.kappa2 += 4.0 / k;

  r.alphaK2 = alpha_K2(table, k2);
  r.delta2 = delta2(kDeclaredRho, r.lambda, r.alphaK2);

  const auto arcs = arc_exponents(r.rho);
  r.q1_exp = arcs.q1_exp;
  r.q2_exp = arcs.q2_exp;

  const auto shifted = table.shifted(1e-10);
  const double a1s = alpha_K1(shifted, k1).delta1;
  const auto lrs = solve_lambda_rho(shifted);
  r.delta1_shifted = a1s;
  r.delta2_shifted = delta2(kDeclaredRho + (lrs.rho - lr.rho), lrs.lambda, alpha_K2(shifted, k2));
  return r;
}

bool evaluate(const ConstantCheck& row) {
  if (!std::isfinite(row.computed)) return false;
  if (row.relation == Relation::Below) return row.computed < row.paper_value;
  return std::abs(row.computed - row.paper_value) <= row.tolerance;
}

std::vector<ConstantCheck> verify_all(const PermissibleExponentTable& table) {
  std::vector<ConstantCheck> rows;
  auto add = [&](std::string name, double expected, double tol, const std::function<double()>& fn,
                 Relation rel = Relation::Near) {
    ConstantCheck row;
    row.name = std::move(name);
    row.paper_value = expected;
    row.tolerance = tol;
    row.relation = rel;
    try {
      row.computed = fn();
    } catch (const Error& e) {
      row.computed = std::numeric_limits<double>::quiet_NaN();
      row.detail = e.what();
    }
    row.pass = evaluate(row);
    rows.push_back(std::move(row));
  };

  constexpr double kQuotient = 1e-7;
  constexpr double kDerived = 2e-6;
  constexpr double kTheta = 5e-7;

  add("s7", 6.3974151, kQuotient, [] {
    auto sys = k1_system();
    return solve_holder(sys).to_double();
  });
  add("4*s4", 7.0179948, 1e-6, [] {
    auto sys = k2_system();
    return 4 * solve_holder(sys).to_double();
  });

  const std::pair<std::pair<int, int>, double> alphas[] = {
      {{5, 4}, 0.7122687},   {{6, 6}, 0.7947394},   {{7, 6}, 0.7122311},
      {{7, 7}, 0.7798443},   {{8, 8}, 0.7696422},   {{9, 9}, 0.7619441},
      {{10, 10}, 0.7562432}, {{11, 11}, 0.7518888}, {{12, 13}, 0.7824157},
      {{13, 14}, 0.7772808}, {{14, 15}, 0.7729593}};
  for (const auto& [key, expected] : alphas) {
    const auto [k, s] = key;
    add("alpha_" + std::to_string(k) + "," + std::to_string(s), expected, kQuotient,
        [&table, k = k, s = s] { return alpha_ks(k, s, table); });
  }
  add("alpha_4,7/2", 0.787648, kQuotient, [&] { return alpha_ks(4, Rational(7, 2), table); });

  add("alpha(K1)", 0.7508985, kDerived, [&] {
    auto sys = k1_system();
    solve_holder(sys);
    return alpha_K1(table, sys).alpha;
  });
  add("delta1", 0.0008985, kDerived, [&] {
    auto sys = k1_system();
    solve_holder(sys);
    return alpha_K1(table, sys).delta1;
  });

  const std::tuple<int, int, double, double> ts[] = {
      {13, 4, 0.01721257, 0.58202682},
      {14, 4, 0.01384513, 0.5553779},
      {14, 5, 0.02117723, 0.6482762}};
  for (const auto& [k, s, theta, sigma] : ts) {
    const std::string suffix = std::to_string(k) + "," + std::to_string(s);
    add("theta_" + suffix, theta, kTheta, [&table, k = k, s = s] {
      return theta_sigma(k, s, table).theta;
    });
    add("sigma_" + suffix, sigma, kTheta, [&table, k = k, s = s] {
      return theta_sigma(k, s, table).sigma;
    });
  }
  add("sigma'_13,4", 0.5630657, kTheta, [&] { return sigma_primes(table).sp13_4; });
  add("sigma'_14,4", 0.5399863, kTheta, [&] { return sigma_primes(table).sp14_4; });
  add("sigma'_14,5", 0.6321008, kTheta, [&] { return sigma_primes(table).sp14_5; });

  add("u1", 0.4827948, kDerived, [&] { return solve_lambda_rho(table).u1; });
  add("u2", 0.5750298, kDerived, [&] { return solve_lambda_rho(table).u2; });
  add("lambda", 0.9155538, kDerived, [&] { return solve_lambda_rho(table).lambda; });
  add("rho", 0.004453, kDerived, [&] { return solve_lambda_rho(table).rho; });
  add("rho'", 0.0109875, kDerived, [&] { return solve_lambda_rho(table).rho_prime; });

  add("alpha(K2)", 0.7834034, kDerived, [&] {
    auto sys = k2_system();
    solve_holder(sys);
    return alpha_K2(table, sys);
  });
  add("delta2", 0.001651382, 3e-6, [&] {
    auto sys = k2_system();
    solve_holder(sys);
    return delta2(kDeclaredRho, solve_lambda_rho(table).lambda, alpha_K2(table, sys));
  });
  add("4/9+2rho < 0.4533505", kQ2Ceiling, 0,
      [&] { return arc_exponents(solve_lambda_rho(table).rho).q2_exp; }, Relation::Below);
  add("4/9+2rho(declared) < 0.4533505", kQ2Ceiling, 0,
      [] { return arc_exponents(kDeclaredRho).q2_exp; }, Relation::Below);
  add("rho <= declared rho", kDeclaredRho + 1e-15, 0,
      [&] { return solve_lambda_rho(table).rho; }, Relation::Below);
  return rows;
}

bool all_pass(const std::vector<ConstantCheck>& rows) {
  for (const auto& row : rows) {
    if (!row.pass) return false;
  }
  return !rows.empty();
}

}  // namespace unlike::exponents
