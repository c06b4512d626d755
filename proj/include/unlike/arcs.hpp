#pragma once

#include <cstdint>
#include <vector>

#include "unlike/params.hpp"

namespace unlike::arcs {

enum class ArcKind { Major, MajorStar, Minor };

struct ArcLabel {
  std::uint64_t q = 0;
  std::uint64_t a = 0;
  double beta = 0;  // α − a/q, taken at the representative nearest α
  ArcKind kind = ArcKind::Minor;
};

struct Arc {
  std::uint64_t q = 0;
  std::uint64_t a = 0;
  double center = 0;  // a/q ∈ (0, 1]
  double halfwidth = 0;
};

struct Interval {
  double lo = 0;
  double hi = 0;
  double length() const { return hi - lo; }
};

struct ArcSystem {
  GlobalParameters params;
  double Q = 0;
  bool star = false;
  bool overlap_warning = false;  // set when Q > n^{1/2}/2
  std::vector<Arc> arcs;         // ordered by q, then a

  // The unit interval [n^{−1/2}, 1 + n^{−1/2}].
  double lower() const;
  double upper() const;
  double halfwidth(std::uint64_t q) const;
};

ArcSystem build(const GlobalParameters& params, double Q, bool star);

// Closed arcs; a point on two arcs goes to the smaller q.
ArcLabel classify(double alpha, const ArcSystem& system);

// Merged union of the arcs, clipped to the unit interval, ascending.
std::vector<Interval> union_intervals(const ArcSystem& system);
// Complement of the union inside the unit interval.
std::vector<Interval> minor_intervals(const ArcSystem& system);
// a ∖ b for ascending, disjoint interval lists.
std::vector<Interval> difference(const std::vector<Interval>& a, const std::vector<Interval>& b);
double total_length(const std::vector<Interval>& intervals);
// Every interval of a lies inside some interval of b.
bool contained_in(const std::vector<Interval>& a, const std::vector<Interval>& b);

double measure(const ArcSystem& system);
// Σ_{q≤Q} φ(q)·2·halfwidth(q): the measure when no two arcs meet.
double disjoint_measure(const ArcSystem& system);

// 𝒢(α) = n / (q(1 + n|β|)); Major labels only.
double pruning_kernel(const ArcLabel& label, const GlobalParameters& params);

}  // namespace unlike::arcs
