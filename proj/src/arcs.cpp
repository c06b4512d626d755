#include "unlike/arcs.hpp"

#include <algorithm>
#include <cmath>

#include "unlike/arith.hpp"
#include "unlike/compensated.hpp"
#include "unlike/error.hpp"

namespace unlike::arcs {

namespace {

struct Convergent {
  std::int64_t p = 0;
  std::int64_t q = 0;
};

// Convergents of x with denominator ≤ qmax, in order.
std::vector<Convergent> convergents(long double x, std::int64_t qmax) {
  std::vector<Convergent> out;
  std::int64_t p0 = 1, q0 = 0;
  auto a = static_cast<std::int64_t>(std::floor(x));
  std::int64_t p1 = a, q1 = 1;
  out.push_back({p1, q1});
  long double rem = x - a;
  for (int step = 0; step < 64 && rem > 0; ++step) {
    const long double inv = 1 / rem;
    if (inv > 1e15L) break;
    a = static_cast<std::int64_t>(std::floor(inv));
    rem = inv - a;
    const std::int64_t p2 = a * p1 + p0;
    const std::int64_t q2 = a * q1 + q0;
    if (q2 > qmax) break;
    out.push_back({p2, q2});
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return out;
}

std::vector<Interval> merge(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> out;
  for (const auto& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

}  // namespace

double ArcSystem::lower() const { return 1 / std::sqrt(static_cast<double>(params.n)); }
double ArcSystem::upper() const { return 1 + lower(); }

double ArcSystem::halfwidth(std::uint64_t q) const {
  const double n = static_cast<double>(params.n);
  const double h = Q / (static_cast<double>(q) * n);
  return star ? std::min(h, std::pow(n, params.nu - 1)) : h;
}

ArcSystem build(const GlobalParameters& params, double Q, bool star) {
  if (!(Q >= 1)) throw Error("Q must be at least 1");
  ArcSystem sys;
  sys.params = params;
  sys.Q = Q;
  sys.star = star;
  sys.overlap_warning = Q > std::sqrt(static_cast<double>(params.n)) / 2;
  const auto qmax = static_cast<std::uint64_t>(std::floor(Q));
  for (std::uint64_t q = 1; q <= qmax; ++q) {
    const double h = sys.halfwidth(q);
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (arith::gcd(a, q) != 1) continue;
      sys.arcs.push_back({q, a, static_cast<double>(a) / static_cast<double>(q), h});
    }
  }
  return sys;
}

ArcLabel classify(double alpha, const ArcSystem& sys) {
  const double lo = sys.lower();
  const long double x = alpha - std::floor(alpha - lo);  // into [lo, lo + 1)
  const auto qmax = static_cast<std::int64_t>(std::floor(sys.Q));
  const ArcKind major = sys.star ? ArcKind::MajorStar : ArcKind::Major;

  // Closed arc test against the same rounded endpoints union_intervals
  // uses, so a grid point on an edge lands on the same side in both.
  auto inside = [&](std::int64_t p, std::int64_t q) {
    const double center = static_cast<double>(p) / static_cast<double>(q);
    const double h = sys.halfwidth(static_cast<std::uint64_t>(q));
    return center - h <= x && x <= center + h;
  };

  auto make = [&](std::int64_t p, std::int64_t q) {
    ArcLabel label;
    label.q = static_cast<std::uint64_t>(q);
    auto a = p % q;
    if (a <= 0) a += q;
    label.a = static_cast<std::uint64_t>(a);
    label.beta = static_cast<double>(x - static_cast<long double>(p) / q);
    label.kind = major;
    return label;
  };

  if (2.0 * sys.Q * sys.Q <= static_cast<double>(sys.params.n)) {
    // Every containing a/q satisfies |α − a/q| ≤ 1/(2q²), so it is a
    // convergent of α.
    for (const auto& c : convergents(x, qmax)) {
      if (inside(c.p, c.q)) return make(c.p, c.q);
    }
  } else {
    for (std::int64_t q = 1; q <= qmax; ++q) {
      const auto p = static_cast<std::int64_t>(std::nearbyint(x * q));
      if (arith::gcd(static_cast<std::uint64_t>(std::abs(p)), static_cast<std::uint64_t>(q)) != 1) continue;
      if (inside(p, q)) return make(p, q);
    }
  }
  ArcLabel minor;
  minor.kind = ArcKind::Minor;
  return minor;
}

std::vector<Interval> union_intervals(const ArcSystem& sys) {
  std::vector<Interval> raw;
  raw.reserve(sys.arcs.size());
  const double lo = sys.lower(), hi = sys.upper();
  for (const auto& arc : sys.arcs) {
    Interval iv{arc.center - arc.halfwidth, arc.center + arc.halfwidth};
    iv.lo = std::max(iv.lo, lo);
    iv.hi = std::min(iv.hi, hi);
    if (iv.hi > iv.lo) raw.push_back(iv);
  }
  return merge(std::move(raw));
}

std::vector<Interval> difference(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::vector<Interval> out;
  std::size_t j = 0;
  for (const auto& iv : a) {
    double cur = iv.lo;
    while (j < b.size() && b[j].hi <= cur) ++j;
    std::size_t k = j;
    while (k < b.size() && b[k].lo < iv.hi) {
      if (b[k].lo > cur) out.push_back({cur, b[k].lo});
      cur = std::max(cur, b[k].hi);
      ++k;
    }
    if (cur < iv.hi) out.push_back({cur, iv.hi});
  }
  return out;
}

std::vector<Interval> minor_intervals(const ArcSystem& sys) {
  return difference({{sys.lower(), sys.upper()}}, union_intervals(sys));
}

double total_length(const std::vector<Interval>& intervals) {
  Neumaier s;
  for (const auto& iv : intervals) s.add(iv.length());
  return s.value();
}

bool contained_in(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  for (const auto& iv : a) {
    const bool inside = std::any_of(b.begin(), b.end(), [&](const Interval& o) {
      return o.lo <= iv.lo && iv.hi <= o.hi;
    });
    if (!inside) return false;
  }
  return true;
}

double measure(const ArcSystem& sys) { return total_length(union_intervals(sys)); }

double disjoint_measure(const ArcSystem& sys) {
  Neumaier s;
  const auto qmax = static_cast<std::uint64_t>(std::floor(sys.Q));
  for (std::uint64_t q = 1; q <= qmax; ++q) {
    s.add(static_cast<double>(arith::euler_phi(q)) * 2 * sys.halfwidth(q));
  }
  return s.value();
}

double pruning_kernel(const ArcLabel& label, const GlobalParameters& params) {
  if (label.kind == ArcKind::Minor) throw Error("kernel defined on major arcs only");
  const double n = static_cast<double>(params.n);
  return n / (static_cast<double>(label.q) * (1 + n * std::abs(label.beta)));
}

}  // namespace unlike::arcs
