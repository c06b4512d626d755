#include "unlike/counting.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "unlike/arith.hpp"
#include "unlike/compensated.hpp"
#include "unlike/error.hpp"
#include "unlike/parallel.hpp"
#include "unlike/simd.hpp"

namespace unlike::counting {

namespace {

constexpr std::uint64_t kNoOverflow = std::numeric_limits<std::uint64_t>::max();
constexpr std::size_t kChunk = 1 << 16;

std::uint64_t power_or_fail(std::uint64_t x, int k) {
  const auto m = arith::ipow(x, k);
  if (m == kNoOverflow) throw Error("x^k overflows 64 bits");
  return m;
}

std::vector<VarRange> flatten(const PowerSignature& sig) {
  std::vector<VarRange> out;
  for (const auto& t : sig.terms) {
    for (int i = 0; i < t.count; ++i) out.push_back(t.range);
  }
  return out;
}

// Integer steps ≤ N of one variable, with multiplicity; rejects weights.
std::vector<std::pair<std::uint64_t, std::uint64_t>> integer_steps(const VarRange& v,
                                                                   std::uint64_t N) {
  if (!v.integral()) throw Error("representation tables need unweighted ranges");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& [m, c] : v.terms()) {
    if (m <= N) out.emplace_back(m, static_cast<std::uint64_t>(c));
  }
  return out;
}

std::size_t words_for(std::uint64_t N) { return static_cast<std::size_t>((N + 1 + 63) / 64); }

void clear_tail(std::vector<std::uint64_t>& bits, std::uint64_t N) {
  const unsigned used = (N + 1) % 64;
  if (used != 0) bits.back() &= (1ULL << used) - 1;
}

bool test_bit(const std::vector<std::uint64_t>& bits, std::uint64_t i) {
  return (bits[i / 64] >> (i % 64)) & 1ULL;
}

// Distinct sums ≤ N of the listed variables, as a bitset.
std::vector<std::uint64_t> reachable(const std::vector<VarRange>& vars, std::uint64_t N) {
  std::vector<std::uint64_t> cur(words_for(N), 0), next(words_for(N), 0);
  cur[0] = 1;
  for (const auto& v : vars) {
    std::fill(next.begin(), next.end(), 0);
    for (const auto& [m, c] : integer_steps(v, N)) {
      (void)c;
      simd::or_shifted(next.data(), cur.data(), next.size(), static_cast<std::size_t>(m));
    }
    clear_tail(next, N);
    std::swap(cur, next);
  }
  return cur;
}

template <class T>
std::vector<std::pair<std::uint64_t, T>> convolve_side(const std::vector<VarRange>& side,
                                                       std::uint64_t budget) {
  std::vector<std::pair<std::uint64_t, T>> dist{{0, T(1)}};
  for (const auto& v : side) {
    const auto steps = v.terms();
    if (steps.empty()) return {};
    if (dist.size() * steps.size() > budget) {
      throw Error("mean value infeasible: side distribution would reach " +
                  std::to_string(dist.size() * steps.size()) + " entries at the degree-" +
                  std::to_string(v.k) + " factor");
    }
    // Hash the partial sums so equal values merge as they are produced.
    std::unordered_map<std::uint64_t, T> acc;
    acc.reserve(dist.size() * steps.size());
    for (const auto& [s, c] : dist) {
      for (const auto& [m, w] : steps) {
        if (s > kNoOverflow - m) throw Error("sum overflows 64 bits");
        acc[s + m] += c * static_cast<T>(w);
      }
    }
    dist.assign(acc.begin(), acc.end());
    std::sort(dist.begin(), dist.end());
  }
  return dist;
}

}  // namespace

std::vector<std::pair<std::uint64_t, double>> VarRange::terms() const {
  std::vector<std::pair<std::uint64_t, double>> out;
  switch (kind) {
    case RangeKind::Plain:
      for (std::uint64_t x = 1;; ++x) {
        const auto m = arith::ipow(x, k);
        if (m > N) break;
        out.emplace_back(m, 1.0);
      }
      break;
    case RangeKind::Weighted: {
      const auto lo = static_cast<std::uint64_t>(std::ceil(X / 2));
      const auto hi = static_cast<std::uint64_t>(std::floor(X));
      for (std::uint64_t x = std::max<std::uint64_t>(1, lo); x <= hi; ++x) {
        out.emplace_back(power_or_fail(x, k), sums::weight(static_cast<double>(x) / X));
      }
      break;
    }
    case RangeKind::Smooth: {
      const auto P = static_cast<std::uint64_t>(std::floor(Y));
      if (P < 1) break;
      for (auto x : arith::smooth_sieve(P, R).members) out.emplace_back(power_or_fail(x, k), 1.0);
      break;
    }
    case RangeKind::PrimeProduct:
      for (const auto& [x, c] : arith::tau_table(R, r).counts) {
        out.emplace_back(power_or_fail(x, k), static_cast<double>(c));
      }
      break;
  }
  return out;
}

std::size_t PowerSignature::variables() const {
  std::size_t n = 0;
  for (const auto& t : terms) n += static_cast<std::size_t>(t.count);
  return n;
}

std::uint64_t PowerSignature::minimal_sum() const {
  std::uint64_t s = 0;
  for (const auto& t : terms) {
    const auto steps = t.range.terms();
    if (steps.empty()) return kNoOverflow;
    std::uint64_t least = kNoOverflow;
    for (const auto& [m, c] : steps) least = std::min(least, m);
    s += least * static_cast<std::uint64_t>(t.count);
  }
  return s;
}

PowerSignature theorem_signature(std::uint64_t N) {
  std::vector<int> degrees;
  for (int k = 2; k <= 14; ++k) degrees.push_back(k);
  return plain_signature(degrees, N);
}

PowerSignature plain_signature(const std::vector<int>& degrees, std::uint64_t N) {
  PowerSignature sig;
  for (int k : degrees) {
    if (k < 2) throw Error("degrees must be at least 2");
    VarRange v;
    v.kind = RangeKind::Plain;
    v.k = k;
    v.N = N;
    sig.terms.push_back({v, 1});
  }
  return sig;
}

bool RepresentationTable::representable(std::uint64_t m) const {
  if (m > N) throw Error("value beyond table limit");
  return mode == TableMode::Count ? counts[m] != 0 : test_bit(bits, m);
}

std::uint32_t RepresentationTable::count(std::uint64_t m) const {
  if (mode != TableMode::Count) throw Error("table built in bitset mode");
  if (m > N) throw Error("value beyond table limit");
  return counts[m];
}

RepresentationTable build_table(const PowerSignature& sig, std::uint64_t N, TableMode mode,
                                std::uint64_t budget) {
  if (N + 1 > budget) throw Error("table budget exceeded; use chunked mode");
  RepresentationTable table;
  table.N = N;
  table.mode = mode;
  const auto vars = flatten(sig);
  if (mode == TableMode::Bitset) {
    table.bits = reachable(vars, N);
    return table;
  }
  const std::size_t cells = static_cast<std::size_t>(N + 1);
  std::vector<std::uint32_t> cur(cells, 0), next(cells, 0);
  cur[0] = 1;
  for (const auto& v : vars) {
    const auto steps = integer_steps(v, N);
    std::fill(next.begin(), next.end(), 0);
    const std::size_t chunks = (cells + kChunk - 1) / kChunk;
    // Each chunk of outputs only reads cur, so chunks are independent.
    parallel_for(chunks, [&](std::size_t c) {
      const std::size_t lo = c * kChunk, hi = std::min(cells, lo + kChunk);
      for (const auto& [m, mult] : steps) {
        const std::size_t start = std::max<std::size_t>(lo, static_cast<std::size_t>(m));
        if (start >= hi) continue;
        for (std::uint64_t rep = 0; rep < mult; ++rep) {
          simd::add_saturating_u32(next.data() + start, cur.data() + (start - m), hi - start);
        }
      }
    });
    std::swap(cur, next);
  }
  table.counts = std::move(cur);
  for (auto c : table.counts) table.saturated += (c == std::numeric_limits<std::uint32_t>::max());
  return table;
}

bool saturation_consistent(const RepresentationTable& counts, const RepresentationTable& bits) {
  if (counts.N != bits.N) return false;
  for (std::uint64_t m = 0; m <= counts.N; ++m) {
    if (counts.counts[m] == std::numeric_limits<std::uint32_t>::max() && !bits.representable(m)) {
      return false;
    }
  }
  return true;
}

ExceptionalSet exceptional_set(const RepresentationTable& table) {
  ExceptionalSet out;
  for (std::uint64_t m = 1; m <= table.N; ++m) {
    if (!table.representable(m)) out.values.push_back(m);
  }
  if (!out.values.empty()) out.largest = out.values.back();
  return out;
}

std::size_t balanced_split(const PowerSignature& sig, std::uint64_t N) {
  const auto vars = flatten(sig);
  std::vector<double> sizes;
  for (const auto& v : vars) sizes.push_back(static_cast<double>(integer_steps(v, N).size()));
  std::size_t best = 1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t s = 1; s < vars.size(); ++s) {
    double left = 1, right = 1;
    for (std::size_t i = 0; i < s; ++i) left *= sizes[i];
    for (std::size_t i = s; i < vars.size(); ++i) right *= sizes[i];
    const double cost = std::max(left, right);
    if (cost < best_cost) {
      best_cost = cost;
      best = s;
    }
  }
  return best;
}

RepresentationTable mitm_bitset(const PowerSignature& sig, std::uint64_t N, std::size_t split) {
  const auto vars = flatten(sig);
  if (split == 0 || split >= vars.size()) throw Error("split must leave both halves nonempty");
  const std::vector<VarRange> left(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(split));
  const std::vector<VarRange> right(vars.begin() + static_cast<std::ptrdiff_t>(split), vars.end());
  auto a = reachable(left, N), b = reachable(right, N);
  auto popcount = [](const std::vector<std::uint64_t>& v) {
    std::uint64_t c = 0;
    for (auto w : v) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return c;
  };
  if (popcount(a) < popcount(b)) std::swap(a, b);
  // a is the dense side, kept as a bitset; b becomes a sorted list.
  std::vector<std::uint64_t> sparse;
  for (std::uint64_t m = 0; m <= N; ++m) {
    if (test_bit(b, m)) sparse.push_back(m);
  }
  RepresentationTable table;
  table.N = N;
  table.mode = TableMode::Bitset;
  table.bits.assign(words_for(N), 0);
  for (std::uint64_t m = 0; m <= N; ++m) {
    for (auto s : sparse) {
      if (s > m) break;
      if (test_bit(a, m - s)) {
        table.bits[m / 64] |= 1ULL << (m % 64);
        break;
      }
    }
  }
  return table;
}

std::vector<std::uint64_t> mitm_counts(const PowerSignature& sig,
                                       const std::vector<std::uint64_t>& ms, std::size_t split) {
  const auto vars = flatten(sig);
  if (split == 0 || split >= vars.size()) throw Error("split must leave both halves nonempty");
  std::uint64_t N = 0;
  for (auto m : ms) N = std::max(N, m);
  // Left half: dense counts by direct enumeration of tuples.
  std::vector<std::uint64_t> left(static_cast<std::size_t>(N + 1), 0);
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> steps;
  for (const auto& v : vars) steps.push_back(integer_steps(v, N));
  auto dfs = [&](auto&& self, std::size_t i, std::size_t end, std::uint64_t sum, std::uint64_t mult,
                 auto&& sink) -> void {
    if (i == end) {
      sink(sum, mult);
      return;
    }
    for (const auto& [m, c] : steps[i]) {
      if (sum + m > N) break;
      self(self, i + 1, end, sum + m, mult * c, sink);
    }
  };
  dfs(dfs, 0, split, 0, 1, [&](std::uint64_t s, std::uint64_t c) { left[s] += c; });
  std::unordered_map<std::uint64_t, std::uint64_t> right_map;
  dfs(dfs, split, vars.size(), 0, 1, [&](std::uint64_t s, std::uint64_t c) { right_map[s] += c; });
  std::vector<std::pair<std::uint64_t, std::uint64_t>> right(right_map.begin(), right_map.end());
  std::sort(right.begin(), right.end());

  std::vector<std::uint64_t> out;
  out.reserve(ms.size());
  for (auto m : ms) {
    std::uint64_t total = 0;
    for (const auto& [s, c] : right) {
      if (s > m) break;
      total += c * left[m - s];
    }
    out.push_back(total);
  }
  return out;
}

EquationSpec MeanValueSpec::equation() const {
  EquationSpec eq;
  for (const auto& [range, s] : factors) {
    if (s < 1) throw Error("moment exponent must be positive");
    for (int i = 0; i < s; ++i) {
      eq.left.push_back(range);
      eq.right.push_back(range);
    }
  }
  return eq;
}

std::vector<std::pair<std::uint64_t, double>> side_distribution(const std::vector<VarRange>& side,
                                                                std::uint64_t budget) {
  return convolve_side<double>(side, budget);
}

MeanValue mean_value(const EquationSpec& eq, std::uint64_t budget) {
  MeanValue out;
  out.integral = std::all_of(eq.left.begin(), eq.left.end(), [](const VarRange& v) { return v.integral(); }) &&
                 std::all_of(eq.right.begin(), eq.right.end(), [](const VarRange& v) { return v.integral(); });
  if (out.integral) {
    const auto left = convolve_side<std::uint64_t>(eq.left, budget);
    const auto right = convolve_side<std::uint64_t>(eq.right, budget);
    out.left_support = left.size();
    out.right_support = right.size();
    std::unordered_map<std::uint64_t, std::uint64_t> index(left.begin(), left.end());
    unsigned __int128 total = 0;
    for (const auto& [s, c] : right) {
      const auto it = index.find(s);
      if (it != index.end()) total += static_cast<unsigned __int128>(it->second) * c;
    }
    if (total > kNoOverflow) throw Error("mean value exceeds 64 bits");
    out.exact = static_cast<std::uint64_t>(total);
    out.value = static_cast<double>(out.exact);
    return out;
  }
  const auto left = convolve_side<double>(eq.left, budget);
  const auto right = convolve_side<double>(eq.right, budget);
  out.left_support = left.size();
  out.right_support = right.size();
  std::unordered_map<std::uint64_t, double> index(left.begin(), left.end());
  Neumaier total;
  for (const auto& [s, c] : right) {
    const auto it = index.find(s);
    if (it != index.end()) total.add(it->second * c);
  }
  out.value = total.value();
  return out;
}

MeanValue mean_value(const MeanValueSpec& spec, std::uint64_t budget) {
  return mean_value(spec.equation(), budget);
}

MeanValueSpec parse_mean_value_spec(const std::string& text) {
  MeanValueSpec spec;
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact.empty()) throw Error("empty mean value spec");
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error("bad mean value spec at offset " + std::to_string(pos) + ": " + why);
  };
  auto read_int = [&]() {
    const std::size_t start = pos;
    while (pos < compact.size() && std::isdigit(static_cast<unsigned char>(compact[pos]))) ++pos;
    if (start == pos) fail("expected integer");
    return std::stoll(compact.substr(start, pos - start));
  };
  while (true) {
    if (pos >= compact.size()) fail("expected factor");
    const char kind = compact[pos++];
    VarRange v;
    switch (kind) {
      case 'x': v.kind = RangeKind::Plain; break;
      case 'F': v.kind = RangeKind::Weighted; break;
      case 'f': v.kind = RangeKind::Smooth; break;
      case 'g': v.kind = RangeKind::PrimeProduct; break;
      default: fail(std::string("unknown factor kind '") + kind + "'");
    }
    v.k = static_cast<int>(read_int());
    if (v.k < 1) fail("degree must be positive");
    if (pos >= compact.size() || compact[pos] != '(') fail("expected '('");
    ++pos;
    const auto close = compact.find(')', pos);
    if (close == std::string::npos) fail("missing ')'");
    std::stringstream args(compact.substr(pos, close - pos));
    std::string item;
    while (std::getline(args, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) fail("expected key=value");
      const std::string key = item.substr(0, eq);
      double value = 0;
      try {
        value = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        fail("bad number for " + key);
      }
      if (key == "N") v.N = static_cast<std::uint64_t>(value);
      else if (key == "X") v.X = value;
      else if (key == "Y") v.Y = value;
      else if (key == "R") v.R = static_cast<std::uint64_t>(value);
      else if (key == "r") v.r = static_cast<int>(value);
      else fail("unknown key " + key);
    }
    pos = close + 1;
    if (pos >= compact.size() || compact[pos] != '^') fail("expected '^'");
    ++pos;
    const auto exp = read_int();
    if (exp <= 0 || exp % 2 != 0) fail("exponent must be even and positive");
    spec.factors.emplace_back(v, static_cast<int>(exp / 2));
    if (pos == compact.size()) break;
    if (compact[pos] != '*') fail("expected '*'");
    ++pos;
  }
  return spec;
}

VarRange range_for(const sums::SumSpec& spec) {
  VarRange v;
  v.k = spec.k;
  switch (spec.kind) {
    case sums::SumKind::Weighted:
      v.kind = RangeKind::Weighted;
      v.X = spec.params.X(spec.k);
      break;
    case sums::SumKind::Smooth:
      v.kind = RangeKind::Smooth;
      v.Y = spec.params.Y(spec.k);
      v.R = spec.params.R;
      break;
    case sums::SumKind::PrimeProduct:
      v.kind = RangeKind::PrimeProduct;
      v.R = spec.params.R;
      v.r = spec.params.r(spec.k);
      break;
  }
  return v;
}

RestrictedMeanValue restricted_mean_value(const sums::ExponentialSum& sum, const VarRange& range,
                                          int s, const arcs::ArcSystem& system) {
  RestrictedMeanValue out;
  const auto q = sums::moment_over_arcs(sum, s, system);
  out.major = q.major;
  out.minor_quadrature = q.minor;
  out.panels = q.panels;
  MeanValueSpec spec;
  spec.factors.emplace_back(range, s);
  out.exact_total = mean_value(spec).value;
  out.minor = out.exact_total - out.major;
  return out;
}

double weighted_count(std::uint64_t n, const std::vector<int>& degrees,
                      const GlobalParameters& params, std::size_t* solutions) {
  if (degrees.empty()) throw Error("empty signature");
  std::vector<std::vector<std::pair<std::uint64_t, double>>> steps;
  for (int k : degrees) {
    VarRange v;
    v.kind = RangeKind::Weighted;
    v.k = k;
    v.X = params.X(k);
    steps.push_back(v.terms());
  }
  // Index of the last variable's powers for the final lookup.
  std::unordered_map<std::uint64_t, double> last(steps.back().begin(), steps.back().end());
  Neumaier total;
  std::size_t found = 0;
  auto dfs = [&](auto&& self, std::size_t i, std::uint64_t rem, double w) -> void {
    if (i + 1 == steps.size()) {
      const auto it = last.find(rem);
      if (it != last.end()) {
        total.add(w * it->second);
        ++found;
      }
      return;
    }
    for (const auto& [m, c] : steps[i]) {
      if (m >= rem) break;
      self(self, i + 1, rem - m, w * c);
    }
  };
  dfs(dfs, 0, n, 1.0);
  if (solutions != nullptr) *solutions = found;
  return total.value();
}

namespace {

std::vector<VarRange> full_unweighted(const GlobalParameters& params) {
  std::vector<VarRange> out;
  for (int k : {4, 12, 13, 14}) {
    VarRange v;
    v.kind = RangeKind::Smooth;
    v.k = k;
    v.Y = params.Y(k);
    v.R = params.R;
    out.push_back(v);
  }
  for (int k = 5; k <= 11; ++k) {
    VarRange v;
    v.kind = RangeKind::PrimeProduct;
    v.k = k;
    v.R = params.R;
    v.r = params.r(k);
    out.push_back(v);
  }
  return out;
}

// Dense distribution of Σ over `vars`, restricted to sums ≤ limit.
std::vector<double> dense_distribution(const std::vector<VarRange>& vars, std::uint64_t limit) {
  const std::size_t cells = static_cast<std::size_t>(limit + 1);
  std::vector<double> cur(cells, 0), next(cells, 0);
  cur[0] = 1;
  for (const auto& v : vars) {
    std::fill(next.begin(), next.end(), 0.0);
    for (const auto& [m, c] : v.terms()) {
      if (m > limit) continue;
      const auto shift = static_cast<std::size_t>(m);
      simd::axpy(next.data() + shift, cur.data(), c, cells - shift);
    }
    std::swap(cur, next);
  }
  return cur;
}

}  // namespace

double weighted_count_full(std::uint64_t n, const GlobalParameters& params) {
  if (n + 1 > params.table_budget) throw Error("table budget exceeded; use chunked mode");
  const auto unweighted = dense_distribution(full_unweighted(params), n);
  VarRange v2, v3;
  v2.kind = v3.kind = RangeKind::Weighted;
  v2.k = 2;
  v2.X = params.X(2);
  v3.k = 3;
  v3.X = params.X(3);
  Neumaier total;
  for (const auto& [m2, w2] : v2.terms()) {
    if (m2 >= n) break;
    for (const auto& [m3, w3] : v3.terms()) {
      if (m2 + m3 > n) break;
      const double u = unweighted[static_cast<std::size_t>(n - m2 - m3)];
      if (u != 0) total.add(w2 * w3 * u);
    }
  }
  return total.value();
}

std::vector<double> weighted_count_table(std::uint64_t limit, const GlobalParameters& params) {
  if (limit + 1 > params.table_budget) throw Error("table budget exceeded; use chunked mode");
  auto vars = full_unweighted(params);
  VarRange v2, v3;
  v2.kind = v3.kind = RangeKind::Weighted;
  v2.k = 2;
  v2.X = params.X(2);
  v3.k = 3;
  v3.X = params.X(3);
  vars.push_back(v2);
  vars.push_back(v3);
  return dense_distribution(vars, limit);
}

namespace {

constexpr char kMagic[4] = {'U', 'N', 'L', 'K'};
constexpr std::uint16_t kVersion = 1;

template <class T>
void put_le(std::ostream& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.put(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
  }
}

template <class T>
T get_le(std::istream& in) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int c = in.get();
    if (c == EOF) throw Error("truncated table file");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return static_cast<T>(v);
}

}  // namespace

void write_table(const RepresentationTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(kMagic, 4);
  put_le<std::uint16_t>(out, kVersion);
  put_le<std::uint16_t>(out, table.mode == TableMode::Count ? 0 : 1);
  put_le<std::uint64_t>(out, table.N);
  if (table.mode == TableMode::Count) {
    for (auto c : table.counts) put_le<std::uint32_t>(out, c);
  } else {
    for (auto w : table.bits) put_le<std::uint64_t>(out, w);
  }
  if (!out) throw Error("write failed for " + path.string());
}

RepresentationTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw Error("not a representation table");
  if (get_le<std::uint16_t>(in) != kVersion) throw Error("unsupported table version");
  const auto mode = get_le<std::uint16_t>(in);
  if (mode > 1) throw Error("unknown table mode");
  RepresentationTable table;
  table.mode = mode == 0 ? TableMode::Count : TableMode::Bitset;
  table.N = get_le<std::uint64_t>(in);
  if (table.mode == TableMode::Count) {
    table.counts.resize(static_cast<std::size_t>(table.N + 1));
    for (auto& c : table.counts) c = get_le<std::uint32_t>(in);
    for (auto c : table.counts) table.saturated += (c == std::numeric_limits<std::uint32_t>::max());
  } else {
    table.bits.resize(words_for(table.N));
    for (auto& w : table.bits) w = get_le<std::uint64_t>(in);
  }
  return table;
}

}  // namespace unlike::counting
