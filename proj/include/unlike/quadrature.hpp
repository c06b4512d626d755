#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <utility>
#include <vector>

namespace unlike::quad {

struct Rule {
  std::vector<double> nodes;    // on [−1, 1], ascending
  std::vector<double> weights;
};

// Gauss–Legendre rule with `order` points, by Newton iteration on P_n.
const Rule& gauss_legendre(int order);

template <class T>
struct Result {
  T value{};
  double error = 0;
  bool converged = true;
  int evaluations = 0;
};

// Fixed-order Gauss–Legendre over `panels` equal panels of [a, b].
template <class F>
auto integrate_panels(F&& f, double a, double b, std::size_t panels, int order = 8) {
  using T = decltype(f(a));
  const Rule& rule = gauss_legendre(order);
  const double h = (b - a) / static_cast<double>(panels);
  T total{};
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + h / 2;
    T panel{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * f(mid + h / 2 * rule.nodes[i]);
    }
    total += panel * (h / 2);
  }
  return total;
}

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [−1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

struct Gk15Estimate {
  double err = 0;
  double roundoff = 0;  // error floor from summing |f| in double precision
};

template <class F, class T>
std::pair<T, Gk15Estimate> gk15(F& f, double a, double b) {
  const double c = (a + b) / 2, h = (b - a) / 2;
  const T fc = f(c);
  T kron = fc * kWgk[7];
  T gauss = fc * kWg[3];
  double resabs = magnitude(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T f1 = f(c - dx), f2 = f(c + dx);
    kron += (f1 + f2) * kWgk[j];
    resabs += (magnitude(f1) + magnitude(f2)) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  const double roundoff = 50 * std::numeric_limits<double>::epsilon() * resabs * std::abs(h);
  return {kron * h, {magnitude((kron - gauss) * h), roundoff}};
}

template <class F, class T>
void adapt(F& f, double a, double b, double tol, int depth, Result<T>& out) {
  auto [value, est] = gk15<F, T>(f, a, b);
  const double err = est.err;
  out.evaluations += 15;
  // Below the roundoff floor further bisection cannot help.
  if (err <= tol || err <= est.roundoff || depth == 0) {
    if (err > tol && err > est.roundoff) out.converged = false;
    out.value += value;
    out.error += err;
    return;
  }
  const double m = (a + b) / 2;
  adapt<F, T>(f, a, m, tol / 2, depth - 1, out);
  adapt<F, T>(f, m, b, tol / 2, depth - 1, out);
}

}  // namespace detail

// Recursive bisection with a G7K15 error estimate. `abs_tol` is the
// absolute target; relative targets are converted by the caller, who
// usually knows the L¹ scale better than the integrand does.
template <class F>
auto adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 40) {
  using T = decltype(f(a));
  Result<T> out;
  detail::adapt<F, T>(f, a, b, abs_tol, max_depth, out);
  return out;
}

// Same, but starting from `pieces` equal subintervals, each with an equal
// share of the tolerance. Useful when the integrand oscillates and a single
// G7K15 estimate on the whole range can be accidentally small.
template <class F>
auto adaptive_pieces(F&& f, double a, double b, std::size_t pieces, double abs_tol,
                     int max_depth = 40) {
  using T = decltype(f(a));
  Result<T> out;
  if (pieces == 0) pieces = 1;
  const double h = (b - a) / static_cast<double>(pieces);
  for (std::size_t i = 0; i < pieces; ++i) {
    const double lo = a + h * static_cast<double>(i);
    const double hi = (i + 1 == pieces) ? b : lo + h;
    detail::adapt<F, T>(f, lo, hi, abs_tol / static_cast<double>(pieces), max_depth, out);
  }
  return out;
}

}  // namespace unlike::quad
