#include "unlike/params.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "unlike/arith.hpp"
#include "unlike/error.hpp"
#include "unlike/exponents.hpp"

namespace unlike {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != value.size() || !std::isfinite(v)) {
    throw Error("invalid value for " + key + ": " + value);
  }
  return v;
}

std::uint64_t to_count(const std::string& key, const std::string& value) {
  const double v = to_real(key, value);
  if (v < 0 || v != std::floor(v) || v > 1.8e19) throw Error("invalid value for " + key + ": " + value);
  // Accept "1e6" as well as "1000000".
  return static_cast<std::uint64_t>(v);
}

double computed_rho() {
  static const double rho =
      exponents::solve_lambda_rho(exponents::PermissibleExponentTable::cited()).rho;
  return rho;
}

}  // namespace

GlobalParameters::GlobalParameters() {
  for (int k = 5; k <= 11; ++k) r_k[k] = 2;
}

int GlobalParameters::r(int k) const {
  const auto it = r_k.find(k);
  if (it == r_k.end()) throw Error("no prime count configured for k=" + std::to_string(k));
  return it->second;
}

double GlobalParameters::X(int k) const {
  const auto root = arith::iroot(n, k);
  if (arith::ipow(root, k) == n) return static_cast<double>(root);
  return std::pow(static_cast<double>(n), 1.0 / k);
}

double GlobalParameters::Y(int k) const {
  return std::pow(static_cast<double>(n), lambda / k);
}

double GlobalParameters::Q1() const {
  return std::pow(static_cast<double>(n), 0.5 - 1.0 / 36 + computed_rho());
}

double GlobalParameters::Q2() const {
  return std::pow(static_cast<double>(n), 4.0 / 9 + 2 * computed_rho());
}

double GlobalParameters::Q3() const {
  return std::pow(static_cast<double>(n), std::ldexp(1.0, -20));
}

double GlobalParameters::Q4() const {
  return std::pow(std::log(static_cast<double>(n)), A);
}

std::vector<std::string> GlobalParameters::ordering_violations() const {
  std::vector<std::string> out;
  const double cap = std::sqrt(static_cast<double>(n)) / 4;
  if (Q4() > Q3()) out.push_back("Q4 > Q3");
  if (Q3() > Q2()) out.push_back("Q3 > Q2");
  if (Q2() > Q1()) out.push_back("Q2 > Q1");
  if (Q1() > cap) out.push_back("Q1 > sqrt(n)/4");
  return out;
}

void GlobalParameters::validate() const {
  if (n < 1) throw Error("n must be positive");
  if (!(lambda > 2.0 / 3 && lambda < 1)) throw Error("lambda must lie in (2/3, 1)");
  if (R < 2) throw Error("R must be at least 2");
  for (const auto& [k, r] : r_k) {
    if (r < 1) throw Error("r" + std::to_string(k) + " must be at least 1");
  }
  if (!(nu > 0 && nu < 1)) throw Error("nu must lie in (0, 1)");
  if (!(A > 0)) throw Error("A must be positive");
  if (sieve_budget < 1 || table_budget < 1) throw Error("budgets must be positive");
}

void set_parameter(GlobalParameters& p, const std::string& key, const std::string& value) {
  if (key == "n") {
    p.n = to_count(key, value);
  } else if (key == "lambda") {
    p.lambda = to_real(key, value);
  } else if (key == "R") {
    p.R = to_count(key, value);
  } else if (key == "eta_inv") {
    p.eta_inv = to_count(key, value);
  } else if (key == "nu") {
    p.nu = to_real(key, value);
  } else if (key == "A") {
    p.A = to_real(key, value);
  } else if (key == "sieve_budget") {
    p.sieve_budget = to_count(key, value);
  } else if (key == "table_budget") {
    p.table_budget = to_count(key, value);
  } else if (key.size() >= 2 && key[0] == 'r' && key.find_first_not_of("0123456789", 1) == std::string::npos) {
    const int k = std::stoi(key.substr(1));
    if (k < 5 || k > 11) throw Error("unknown config key: " + key);
    p.r_k[k] = static_cast<int>(to_count(key, value));
  } else {
    throw Error("unknown config key: " + key);
  }
}

GlobalParameters parse_config(std::istream& in) {
  GlobalParameters p;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config line " + std::to_string(line_no) + ": expected key=value");
    set_parameter(p, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  p.validate();
  return p;
}

GlobalParameters load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  return parse_config(in);
}

unsigned worker_count() {
  if (const char* env = std::getenv("UNLIKE_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace unlike
