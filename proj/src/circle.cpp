#include "unlike/circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "unlike/arith.hpp"
#include "unlike/compensated.hpp"
#include "unlike/counting.hpp"
#include "unlike/error.hpp"
#include "unlike/parallel.hpp"
#include "unlike/quadrature.hpp"
#include "unlike/sums.hpp"

namespace unlike::circle {

using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * kPi;

std::vector<cplx> roots_of_unity(std::uint64_t q) {
  std::vector<cplx> out(q);
  for (std::uint64_t j = 0; j < q; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(q);
    out[j] = {std::cos(t), std::sin(t)};
  }
  return out;
}

// For one q: the units a and the products ∏ S(q,a) (already divided by
// q^c φ(q)^d), so that A(q) for any n is Σ_a P(a) e(−an/q).
struct LocalProducts {
  std::uint64_t q = 0;
  std::vector<std::uint64_t> units;
  std::vector<cplx> product;
  std::vector<cplx> roots;

  cplx A(std::uint64_t n) const {
    if (q == 1) return product[0];
    const std::uint64_t nr = n % q;
    Neumaier re, im;
    for (std::size_t i = 0; i < units.size(); ++i) {
      const std::uint64_t j = (q - units[i] * nr % q) % q;  // −a·n mod q
      const cplx v = product[i] * roots[j];
      re.add(v.real());
      im.add(v.imag());
    }
    return {re.value(), im.value()};
  }
};

LocalProducts local_products(std::uint64_t q, const std::vector<LocalFactor>& sig) {
  LocalProducts lp;
  lp.q = q;
  lp.roots = roots_of_unity(q);
  std::vector<arith::PowerResidues> residues;
  double norm = 1;
  const double phi = static_cast<double>(arith::euler_phi(q));
  for (const auto& f : sig) {
    residues.push_back(arith::power_residues(q, f.k, f.units_only));
    norm *= f.units_only ? phi : static_cast<double>(q);
  }
  for (std::uint64_t a = 1; a <= q; ++a) {
    if (arith::gcd(a, q) != 1) continue;
    cplx prod = 1;
    for (const auto& pr : residues) {
      Neumaier re, im;
      for (std::size_t i = 0; i < pr.residue.size(); ++i) {
        const cplx z = lp.roots[a * pr.residue[i] % q];
        re.add(pr.count[i] * z.real());
        im.add(pr.count[i] * z.imag());
      }
      prod *= cplx(re.value(), im.value());
    }
    lp.units.push_back(a);
    lp.product.push_back(prod / norm);
  }
  return lp;
}

std::vector<LocalProducts> local_table(std::uint64_t X, const std::vector<LocalFactor>& sig) {
  std::vector<LocalProducts> table(static_cast<std::size_t>(X));
  parallel_for(table.size(), [&](std::size_t i) { table[i] = local_products(i + 1, sig); });
  return table;
}

SingularSeriesPartial series_from(const std::vector<LocalProducts>& table, std::uint64_t n) {
  SingularSeriesPartial out;
  out.n = n;
  Neumaier running;
  for (const auto& lp : table) {
    const cplx a = lp.A(n);
    out.Aq.emplace_back(lp.q, a.real());
    out.max_imag = std::max(out.max_imag, std::abs(a.imag()));
    out.C = std::max(out.C, std::abs(a.real()) * std::pow(static_cast<double>(lp.q), 3.5));
    running.add(a.real());
    out.partial.push_back(running.value());
  }
  const double X = static_cast<double>(table.size());
  out.tail_estimate = out.C * (2.0 / 3) * std::pow(X, -2.5);
  return out;
}

}  // namespace

double SingularSeriesPartial::increment(std::uint64_t X1, std::uint64_t X2) const {
  if (X2 > Aq.size() || X1 > X2) throw Error("increment outside the computed range");
  Neumaier sum;
  for (std::uint64_t q = X1 + 1; q <= X2; ++q) sum.add(Aq[q - 1].second);
  return sum.value();
}

std::vector<LocalFactor> full_signature() {
  std::vector<LocalFactor> sig;
  for (int k : {2, 3, 4, 12, 13, 14}) sig.push_back({k, false});
  for (int k = 5; k <= 11; ++k) sig.push_back({k, true});
  return sig;
}

std::vector<LocalFactor> plain_signature(const std::vector<int>& degrees) {
  std::vector<LocalFactor> sig;
  for (int k : degrees) sig.push_back({k, false});
  return sig;
}

cplx A_of_q_complex(std::uint64_t q, std::uint64_t n, const std::vector<LocalFactor>& sig) {
  if (q < 1) throw Error("q must be positive");
  return local_products(q, sig).A(n);
}

double A_of_q(std::uint64_t q, std::uint64_t n, const std::vector<LocalFactor>& sig) {
  return A_of_q_complex(q, n, sig).real();
}

SingularSeriesPartial singular_series(std::uint64_t n, std::uint64_t X,
                                      const std::vector<LocalFactor>& sig) {
  if (X < 1) throw Error("X must be at least 1");
  return series_from(local_table(X, sig), n);
}

IntegralSpec full_integral_spec() {
  IntegralSpec spec;
  spec.weighted = {2, 3};
  for (int k = 5; k <= 11; ++k) spec.prime_products.push_back(k);
  spec.smooth_constants = {4, 12, 13, 14};
  return spec;
}

namespace {

double constants_of(const GlobalParameters& params, const IntegralSpec& spec) {
  double c = 1;
  for (int k : spec.smooth_constants) c *= sums::y_prime(k, params);
  return c;
}

// Highest frequency (in β) present in v(β), used to size the panels.
double bandwidth(const GlobalParameters& params, const IntegralSpec& spec) {
  double f = 0;
  for (int k : spec.weighted) f += std::pow(params.X(k), k);
  for (int k : spec.prime_products) {
    f += std::pow(static_cast<double>(params.R), params.r(k) * k);
  }
  return f;
}

cplx raw_integrand(double beta, const GlobalParameters& params, const IntegralSpec& spec,
                   bool* accurate) {
  cplx v = 1;
  for (int k : spec.weighted) {
    const auto r = sums::oscillatory_v(k, beta, params);
    if (accurate != nullptr && !r.accurate) *accurate = false;
    v *= r.value;
  }
  for (int k : spec.prime_products) {
    const auto r = sums::v_star(k, beta, params);
    if (accurate != nullptr && !r.accurate) *accurate = false;
    v *= r.value;
  }
  return v;
}

// [lo, hi] for Σ x^k over the variables of v.
std::pair<double, double> support(const GlobalParameters& params, const IntegralSpec& spec) {
  double lo = 0, hi = 0;
  for (int k : spec.weighted) {
    lo += std::pow(params.X(k) / 2, k);
    hi += std::pow(params.X(k), k);
  }
  const double R = static_cast<double>(params.R);
  for (int k : spec.prime_products) {
    lo += std::pow(R / 2, params.r(k) * k);
    hi += std::pow(R, params.r(k) * k);
  }
  return {lo, hi};
}

constexpr double kMaxPanels = 1e5;
constexpr double kPieceBudget = 2e8;

double panels_wanted(double B, double f) { return std::ceil(2 * B * f * 2); }

struct Nodes {
  std::vector<double> beta;
  std::vector<double> weight;
  std::vector<cplx> v;
  bool accurate = true;
};

Nodes integration_nodes(double B, const GlobalParameters& params, const IntegralSpec& spec,
                        double extra_frequency) {
  const double f = bandwidth(params, spec) + extra_frequency;
  const double want = panels_wanted(B, f);
  const auto panels = static_cast<std::size_t>(std::clamp(want, 16.0, kMaxPanels));
  const auto& rule = quad::gauss_legendre(10);
  const double h = 2 * B / static_cast<double>(panels);
  Nodes nodes;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = -B + h * (static_cast<double>(p) + 0.5);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      nodes.beta.push_back(mid + h / 2 * rule.nodes[j]);
      nodes.weight.push_back(rule.weights[j] * h / 2);
    }
  }
  nodes.v.resize(nodes.beta.size());
  std::vector<char> ok(nodes.beta.size(), 1);
  parallel_for(nodes.beta.size(), [&](std::size_t i) {
    bool acc = true;
    nodes.v[i] = raw_integrand(nodes.beta[i], params, spec, &acc);
    ok[i] = acc;
  });
  nodes.accurate = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
  if (want > kMaxPanels) nodes.accurate = false;
  return nodes;
}

cplx integrate_nodes(const Nodes& nodes, std::uint64_t m) {
  Neumaier re, im;
  const double md = static_cast<double>(m);
  for (std::size_t i = 0; i < nodes.beta.size(); ++i) {
    // e(−mβ) with the product reduced mod 1 first.
    double t = md * nodes.beta[i];
    t -= std::nearbyint(t);
    const cplx z = nodes.v[i] * cplx(std::cos(kTwoPi * t), -std::sin(kTwoPi * t)) * nodes.weight[i];
    re.add(z.real());
    im.add(z.imag());
  }
  return {re.value(), im.value()};
}

SingularIntegral finish(const Nodes& nodes, std::uint64_t m, double B, const GlobalParameters& params,
                        const IntegralSpec& spec, double constants, double v0) {
  SingularIntegral out;
  const cplx value = integrate_nodes(nodes, m) * constants;
  out.value = value.real();
  out.imag = value.imag();
  out.B = B;
  out.accurate = nodes.accurate;
  out.constants = constants;
  out.at_zero = v0 * constants;
  const double edge = std::max(std::abs(raw_integrand(B, params, spec, nullptr)),
                               std::abs(raw_integrand(-B, params, spec, nullptr)));
  out.decayed = edge < 1e-6 * v0;
  for (int k : spec.prime_products) out.r_prime += params.r(k);
  return out;
}

}  // namespace

cplx integrand_v(double beta, const GlobalParameters& params, const IntegralSpec& spec,
                 bool* accurate) {
  return raw_integrand(beta, params, spec, accurate) * constants_of(params, spec);
}

double auto_B(const GlobalParameters& params, const IntegralSpec& spec) {
  const double v0 = std::abs(raw_integrand(0, params, spec, nullptr));
  const double n = static_cast<double>(params.n);
  if (v0 == 0) return 1 / n;
  auto small = [&](double b) {
    return std::abs(raw_integrand(b, params, spec, nullptr)) < 1e-6 * v0 &&
           std::abs(raw_integrand(-b, params, spec, nullptr)) < 1e-6 * v0;
  };
  for (int j = -120; j <= 60; ++j) {
    const double b = std::ldexp(1.0, j) / n;
    if (small(b) && small(2 * b)) return b;
  }
  return std::ldexp(1.0, 60) / n;
}

SingularIntegral singular_integral(std::uint64_t m, double B, const GlobalParameters& params,
                                   const IntegralSpec& spec) {
  if (B <= 0) B = auto_B(params, spec);
  const double md = static_cast<double>(m);
  const auto [lo, hi] = support(params, spec);
  if (panels_wanted(B, bandwidth(params, spec) + md) > kMaxPanels && (md < lo || md > hi)) {
    // 𝔍(m; B) is the density of Σ x^k smoothed by sin(2πBx)/(πx), so it
    // is at most v(0)/(π·distance) away from the support.
    SingularIntegral out;
    out.B = B;
    out.constants = constants_of(params, spec);
    out.at_zero = std::abs(raw_integrand(0, params, spec, nullptr)) * out.constants;
    out.bound = out.at_zero / (kPi * (md < lo ? lo - md : md - hi));
    out.support_shortcut = true;
    out.accurate = false;
    const double edge = std::max(std::abs(raw_integrand(B, params, spec, nullptr)),
                                 std::abs(raw_integrand(-B, params, spec, nullptr)));
    out.decayed = edge < 1e-6 * out.at_zero / out.constants;
    for (int k : spec.prime_products) out.r_prime += params.r(k);
    return out;
  }
  // Each v*_k evaluation costs about 4|β|R^{r k} quadrature pieces.
  double pieces = 0;
  for (int k : spec.prime_products) {
    pieces += 4 + 2 * B * std::pow(static_cast<double>(params.R), params.r(k) * k);
  }
  const double node_count =
      10 * std::clamp(panels_wanted(B, bandwidth(params, spec) + md), 16.0, kMaxPanels);
  if (node_count * pieces > kPieceBudget) {
    throw Error("singular integral infeasible: about " + std::to_string(node_count * pieces) +
                " quadrature pieces for the v* factors; lower R or r_k");
  }
  const auto nodes = integration_nodes(B, params, spec, md);
  const double v0 = std::abs(raw_integrand(0, params, spec, nullptr));
  return finish(nodes, m, B, params, spec, constants_of(params, spec), v0);
}

double delta_integral_2(std::uint64_t m, int j, int k, const GlobalParameters& params) {
  const double Xj = params.X(j), Xk = params.X(k);
  const double md = static_cast<double>(m);
  auto f = [&](double x) {
    const double rest = md - std::pow(x, j);
    if (rest <= 0) return 0.0;
    const double y = std::pow(rest, 1.0 / k);
    const double wy = sums::weight(y / Xk);
    if (wy == 0) return 0.0;
    return sums::weight(x / Xj) * wy / (k * std::pow(y, k - 1));
  };
  const double scale = sums::weight_integral() * Xj / (k * std::pow(Xk / 2, k - 1));
  return quad::adaptive_pieces(f, Xj / 2, Xj, 64, 1e-12 * scale, 40).value;
}

MainTermReport main_term_vs_count(std::uint64_t n_start, std::size_t n_count,
                                  const std::vector<int>& degrees,
                                  const GlobalParameters& params, std::uint64_t qmax) {
  IntegralSpec spec;
  spec.weighted = degrees;
  const auto local = local_table(qmax, plain_signature(degrees));
  const double B = auto_B(params, spec);
  const auto nodes = integration_nodes(B, params, spec, static_cast<double>(n_start + n_count));
  const double v0 = std::abs(raw_integrand(0, params, spec, nullptr));

  MainTermReport report;
  Neumaier sum_count, sum_main, sum_ratio;
  std::size_t finite = 0;
  for (std::size_t i = 0; i < n_count; ++i) {
    MainTermRow row;
    row.n = n_start + i;
    std::size_t sols = 0;
    row.count = counting::weighted_count(row.n, degrees, params, &sols);
    report.solutions += sols;
    row.series = series_from(local, row.n).value();
    row.integral = finish(nodes, row.n, B, params, spec, 1.0, v0).value;
    row.main = row.series * row.integral;
    if (row.main > 0) {
      row.ratio = row.count / row.main;
      sum_ratio.add(row.ratio);
      ++finite;
    } else {
      row.ratio = std::numeric_limits<double>::quiet_NaN();
      row.flagged = true;
    }
    sum_count.add(row.count);
    sum_main.add(row.main);
    report.rows.push_back(row);
  }
  report.mean_ratio = finite > 0 ? sum_ratio.value() / static_cast<double>(finite)
                                 : std::numeric_limits<double>::quiet_NaN();
  report.pooled_ratio = sum_main.value() > 0 ? sum_count.value() / sum_main.value()
                                             : std::numeric_limits<double>::quiet_NaN();
  return report;
}

}  // namespace unlike::circle
