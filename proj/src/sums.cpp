#include "unlike/sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "unlike/compensated.hpp"
#include "unlike/error.hpp"
#include "unlike/parallel.hpp"
#include "unlike/quadrature.hpp"
#include "unlike/rng.hpp"

namespace unlike::sums {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr std::uint64_t kPhaseLimit = 1ULL << 62;

// e(x) for x already reduced or not; reduction keeps the argument small.
cplx e(double x) {
  const double r = x - std::nearbyint(x);
  return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

std::uint64_t checked_power(std::uint64_t x, int k) {
  const auto m = arith::ipow(x, k);
  if (m >= kPhaseLimit) throw Error("frequency x^k exceeds the 62-bit phase range");
  return m;
}

const arith::PrimeProductTable& unit_table() {
  static const arith::PrimeProductTable t{0, 0, {{1, 1}}};
  return t;
}

}  // namespace

double weight(double t) {
  const double d = 1.0 / 16 - (t - 0.75) * (t - 0.75);
  if (d <= 0) return 0;
  return std::exp(-1 / d);
}

double weight_integral() {
  static const double value = [] {
    // The integrand is smooth and flat at both ends; 256 panels of GL-20
    // are converged to roundoff.
    return quad::integrate_panels([](double t) { return weight(t); }, 0.5, 1.0, 256, 20);
  }();
  return value;
}

double SumValue::abs() const { return std::hypot(re, im); }

ExponentialSum::ExponentialSum(const SumSpec& spec) : spec_(spec) {
  const int k = spec.k;
  if (k < 1) throw Error("degree must be positive");
  Neumaier zero, sq;
  auto add = [&](std::uint64_t x, double c) {
    const auto m = checked_power(x, k);
    phases_.push(m, c);
    zero.add(c);
    sq.add(c * c);
    max_m_ = std::max(max_m_, m);
  };
  switch (spec.kind) {
    case SumKind::Weighted: {
      const double X = spec.params.X(k);
      const auto lo = static_cast<std::uint64_t>(std::ceil(X / 2));
      const auto hi = static_cast<std::uint64_t>(std::floor(X));
      for (std::uint64_t x = std::max<std::uint64_t>(lo, 1); x <= hi; ++x) {
        add(x, weight(static_cast<double>(x) / X));
      }
      break;
    }
    case SumKind::Smooth: {
      const auto P = static_cast<std::uint64_t>(std::floor(spec.params.Y(k)));
      if (P >= 1) {
        for (auto x : arith::smooth_sieve(P, spec.params.R, spec.params.sieve_budget).members) {
          add(x, 1.0);
        }
      }
      break;
    }
    case SumKind::PrimeProduct: {
      const auto table = arith::tau_table(spec.params.R, spec.params.r(k));
      if (table.counts.empty()) throw Error("no primes in (R/2,R]");
      for (const auto& [x, c] : table.counts) add(x, static_cast<double>(c));
      break;
    }
  }
  at_zero_ = zero.value();
  sum_sq_ = sq.value();
}

SumValue ExponentialSum::at(double alpha) const {
  const auto v = simd::phase_sum(phases_, alpha);
  return {v.re, v.im, phases_.size(), at_zero_};
}

SumValue eval_sum(const SumSpec& spec, double alpha) { return ExponentialSum(spec).at(alpha); }

OscResult oscillatory_v(int k, double beta, const GlobalParameters& params, double rel_tol) {
  const double X = params.X(k);
  const double B = std::pow(X, k) * beta;  // phase is B·t^k on t ∈ [1/2, 1]
  const auto pieces = static_cast<std::size_t>(std::max(8.0, std::ceil(2 * k * std::abs(B))));
  auto f = [&](double t) { return weight(t) * e(B * std::pow(t, k)); };
  const auto r = quad::adaptive_pieces(f, 0.5, 1.0, pieces, rel_tol * weight_integral(), 30);
  return {X * r.value, r.converged};
}

cplx oscillatory_v_midpoint(int k, double beta, const GlobalParameters& params,
                            std::size_t points) {
  const double X = params.X(k);
  const double B = std::pow(X, k) * beta;
  const double h = 0.5 / static_cast<double>(points);
  Neumaier re, im;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = 0.5 + (static_cast<double>(i) + 0.5) * h;
    const cplx v = weight(t) * e(B * std::pow(t, k));
    re.add(v.real());
    im.add(v.imag());
  }
  return X * h * cplx(re.value(), im.value());
}

double product_density(double u, double R, int r) {
  const double lo = R / 2;
  switch (r) {
    case 1:
      return (u >= lo && u <= R) ? 1.0 : 0.0;
    case 2: {
      const double a = std::max(lo, u / R), b = std::min(R, u / lo);
      return b > a ? std::log(b / a) : 0.0;
    }
    case 3: {
      // ρ₃(u) = ∫ ρ₂(u/x) dx/x over [R/2, R], split where u/x meets the
      // corners of ρ₂'s support.
      std::vector<double> cuts{lo, R};
      for (double c : {u / (R * R), 2 * u / (R * R), 4 * u / (R * R)}) {
        if (c > lo && c < R) cuts.push_back(c);
      }
      std::sort(cuts.begin(), cuts.end());
      double total = 0;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += quad::integrate_panels(
            [&](double x) { return product_density(u / x, R, 2) / x; }, cuts[i], cuts[i + 1], 1,
            16);
      }
      return total;
    }
    default:
      throw Error("dimension beyond desk scale");
  }
}

OscResult v_star(int k, double beta, const GlobalParameters& params, double rel_tol) {
  const int r = params.r(k);
  if (r > 3) throw Error("dimension beyond desk scale");
  const double R = static_cast<double>(params.R);
  const double norm = std::pow(std::log(R), r);
  const double lo = std::pow(R / 2, r), hi = std::pow(R, r);
  if (beta == 0) return {cplx(lo / norm, 0), true};

  const double phase_span = std::abs(beta) * (std::pow(hi, k) - std::pow(lo, k));
  constexpr double kMaxPieces = 200000;
  if (!(4 * phase_span < kMaxPieces)) {
    // Far too many oscillations for the panel budget; the integral is
    // negligible here but not resolved.
    return {cplx(0, 0), false};
  }
  std::vector<double> cuts{lo, hi};
  for (int j = 1; j < r; ++j) cuts.push_back(lo * std::ldexp(1.0, j));
  std::sort(cuts.begin(), cuts.end());
  auto f = [&](double u) { return product_density(u, R, r) * e(std::pow(u, k) * beta); };
  quad::Result<cplx> total;
  const double tol = rel_tol * lo;  // L¹ norm of the density is (R/2)^r
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const double span = std::abs(beta) * (std::pow(b, k) - std::pow(a, k));
    const auto pieces = static_cast<std::size_t>(std::max(4.0, std::ceil(4 * span)));
    const auto part = quad::adaptive_pieces(f, a, b, pieces, tol * (b - a) / (hi - lo), 25);
    total.value += part.value;
    total.converged = total.converged && part.converged;
  }
  return {total.value / norm, total.converged};
}

OscResult v_tilde(int k, double beta, const GlobalParameters& params, double rel_tol) {
  const int r = params.r(k);
  if (r > 3) throw Error("dimension beyond desk scale");
  const double R = static_cast<double>(params.R);
  auto inv_log = [](double x) { return 1 / std::log(x); };
  if (beta == 0) {
    const auto one = quad::adaptive(inv_log, R / 2, R, 1e-13 * R, 30);
    return {cplx(std::pow(one.value, r), 0), one.converged};
  }
  const double scale = std::pow(R / 2, r);
  if (r == 1) {
    const double span = std::abs(beta) * std::pow(R, k);
    const auto pieces = static_cast<std::size_t>(std::max(4.0, std::ceil(4 * span)));
    auto f = [&](double x) { return inv_log(x) * e(std::pow(x, k) * beta); };
    const auto res = quad::adaptive_pieces(f, R / 2, R, pieces, rel_tol * scale, 25);
    return {res.value, res.converged};
  }
  if (r == 2) {
    bool ok = true;
    auto inner = [&](double x1) {
      const double b = beta * std::pow(x1, k);
      const double span = std::abs(b) * std::pow(R, k);
      const auto pieces = static_cast<std::size_t>(std::max(4.0, std::ceil(4 * span)));
      auto f = [&](double x2) { return inv_log(x2) * e(std::pow(x2, k) * b); };
      const auto res = quad::adaptive_pieces(f, R / 2, R, pieces, rel_tol * R / 2, 20);
      ok = ok && res.converged;
      return inv_log(x1) * res.value;
    };
    const double span = std::abs(beta) * std::pow(R * R, k);
    const auto pieces = static_cast<std::size_t>(std::max(4.0, std::ceil(4 * span)));
    if (pieces > 20000) return {cplx(0, 0), false};
    const auto res = quad::adaptive_pieces(inner, R / 2, R, pieces, rel_tol * scale, 20);
    return {res.value, ok && res.converged};
  }
  throw Error("dimension beyond desk scale");
}

double y_prime(int k, const GlobalParameters& params) {
  const auto P = static_cast<std::uint64_t>(std::floor(params.Y(k)));
  if (P < 1) return 0;
  return static_cast<double>(arith::smooth_sieve(P, params.R, params.sieve_budget).members.size());
}

MajorArcApprox major_approx(ApproxKind kind, int k, const arcs::ArcLabel& label,
                            const GlobalParameters& params) {
  if (label.kind == arcs::ArcKind::Minor) throw Error("approximant defined on major arcs only");
  MajorArcApprox out;
  out.kind = kind;
  out.label = label;
  const double q = static_cast<double>(label.q);
  switch (kind) {
    case ApproxKind::F2star:
    case ApproxKind::F3star: {
      const int deg = kind == ApproxKind::F2star ? 2 : 3;
      const auto s = arith::complete_sum(label.q, label.a, deg);
      out.value = cplx(s.re, s.im) / q * oscillatory_v(deg, label.beta, params).value;
      break;
    }
    case ApproxKind::GkStar: {
      const auto s = arith::coprime_sum(label.q, label.a, k);
      out.value = cplx(s.re, s.im) / static_cast<double>(arith::euler_phi(label.q)) *
                  v_star(k, label.beta, params).value;
      break;
    }
    case ApproxKind::FkSmoothStar: {
      const auto s = arith::complete_sum(label.q, label.a, k);
      out.value = cplx(s.re, s.im) / q * y_prime(k, params);
      break;
    }
  }
  return out;
}

DeltaScan delta_scan(int k, double Q, const GlobalParameters& params, std::size_t samples,
                     std::uint64_t seed) {
  const auto sys = arcs::build(params, Q, false);
  const ExponentialSum F({SumKind::Weighted, k, params});
  SplitMix64 rng(seed);
  std::vector<arcs::ArcLabel> labels(samples);
  std::vector<double> alphas(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto& arc = sys.arcs[static_cast<std::size_t>(rng.uniform() * static_cast<double>(sys.arcs.size()))];
    const double beta = (2 * rng.uniform() - 1) * arc.halfwidth;
    labels[i] = {arc.q, arc.a, beta, arcs::ArcKind::Major};
    alphas[i] = arc.center + beta;
  }
  std::vector<double> ratio(samples);
  parallel_for(samples, [&](std::size_t i) {
    const auto s = arith::complete_sum(labels[i].q, labels[i].a, k);
    const cplx star = cplx(s.re, s.im) / static_cast<double>(labels[i].q) *
                      oscillatory_v(k, labels[i].beta, params).value;
    ratio[i] = std::abs(F.at(alphas[i]).value() - star) / std::sqrt(Q);
  });
  DeltaScan out;
  out.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    if (ratio[i] > out.max_ratio) {
      out.max_ratio = ratio[i];
      out.at_alpha = alphas[i];
    }
  }
  return out;
}

SupScan minor_arc_sup_scan(int k, double Q, const GlobalParameters& params,
                           std::size_t grid_size) {
  const auto sys = arcs::build(params, Q, false);
  const ExponentialSum F({SumKind::Weighted, k, params});
  std::vector<double> mags(grid_size, -1);
  parallel_for(grid_size, [&](std::size_t j) {
    const double alpha = sys.lower() + (static_cast<double>(j) + 0.5) / static_cast<double>(grid_size);
    if (arcs::classify(alpha, sys).kind == arcs::ArcKind::Minor) mags[j] = F.at(alpha).abs();
  });
  SupScan out;
  for (double m : mags) {
    if (m < 0) continue;
    ++out.minor_points;
    out.sup = std::max(out.sup, m);
  }
  out.ratio = out.sup / (F.at_zero() / std::sqrt(Q));
  return out;
}

ArcIntegral moment_over_arcs(const ExponentialSum& sum, int s, const arcs::ArcSystem& system,
                             int order) {
  if (s < 1) throw Error("moment order must be positive");
  const double hmax = 1.0 / (static_cast<double>(s) * static_cast<double>(std::max<std::uint64_t>(1, sum.max_frequency())));
  struct Panel {
    double lo, hi;
    bool major;
  };
  std::vector<Panel> panels;
  auto cut = [&](const std::vector<arcs::Interval>& ivs, bool major) {
    for (const auto& iv : ivs) {
      const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(iv.length() / hmax)));
      const double h = iv.length() / static_cast<double>(count);
      for (std::size_t i = 0; i < count; ++i) {
        const double lo = iv.lo + h * static_cast<double>(i);
        panels.push_back({lo, i + 1 == count ? iv.hi : lo + h, major});
      }
    }
  };
  cut(arcs::union_intervals(system), true);
  cut(arcs::minor_intervals(system), false);

  const auto& rule = quad::gauss_legendre(order);
  std::vector<double> values(panels.size());
  parallel_for(panels.size(), [&](std::size_t i) {
    const auto& p = panels[i];
    const double mid = (p.lo + p.hi) / 2, half = (p.hi - p.lo) / 2;
    double acc = 0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const auto v = sum.at(mid + half * rule.nodes[j]);
      acc += rule.weights[j] * std::pow(v.re * v.re + v.im * v.im, s);
    }
    values[i] = acc * half;
  });
  Neumaier major, minor;
  for (std::size_t i = 0; i < panels.size(); ++i) (panels[i].major ? major : minor).add(values[i]);
  return {major.value(), minor.value(), panels.size()};
}

int factorization_t(int k, double Q, const GlobalParameters& params) {
  const double target = std::pow(static_cast<double>(params.n) / (Q * Q), 1.0 / k);
  const double R = static_cast<double>(params.R);
  int t = target <= 1 ? 0 : static_cast<int>(std::ceil(std::log(target) / std::log(R) - 1e-12));
  return std::clamp(t, 0, params.r(k));
}

cplx g_factorized(int k, int t, double alpha, const GlobalParameters& params) {
  const int r = params.r(k);
  if (t < 0 || t > r) throw Error("factorization split out of range");
  const auto left = t == 0 ? unit_table() : arith::tau_table(params.R, t);
  const auto right = t == r ? unit_table() : arith::tau_table(params.R, r - t);
  if ((t > 0 && left.counts.empty()) || (t < r && right.counts.empty())) {
    throw Error("no primes in (R/2,R]");
  }
  Neumaier re, im;
  for (const auto& [x, cx] : left.counts) {
    simd::PhaseTerms h;
    for (const auto& [y, cy] : right.counts) h.push(checked_power(x * y, k), static_cast<double>(cy));
    const auto v = simd::phase_sum(h, alpha);
    re.add(static_cast<double>(cx) * v.re);
    im.add(static_cast<double>(cx) * v.im);
  }
  return {re.value(), im.value()};
}

}  // namespace unlike::sums
