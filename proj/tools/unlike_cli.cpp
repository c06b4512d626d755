// Command-line entry point. Exit codes: 0 ok, 1 a check failed, 2 usage or
// invalid input, 3 runtime failure (I/O and the like).

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "unlike/arcs.hpp"
#include "unlike/arith.hpp"
#include "unlike/circle.hpp"
#include "unlike/counting.hpp"
#include "unlike/error.hpp"
#include "unlike/exponents.hpp"
#include "unlike/params.hpp"
#include "unlike/report.hpp"
#include "unlike/simd.hpp"
#include "unlike/sums.hpp"

using namespace unlike;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kRuntime = 3;

struct Output {
  std::string format = "csv";
  std::string out;
  std::string manifest_path;
};

struct Context {
  GlobalParameters params;
  report::RunManifest manifest;
  Output output;
};

void emit(const Context& ctx, const report::Table& table) {
  const auto fmt = report::parse_format(ctx.output.format);
  if (ctx.output.out.empty()) {
    report::emit(table, fmt, ctx.manifest.id, std::cout);
  } else {
    report::emit_file(table, fmt, ctx.manifest.id, ctx.output.out);
  }
}

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(item, &used);
      if (used != item.size() || k < 1 || k > 20) throw Error("");
      out.push_back(k);
    } catch (const std::exception&) {
      throw Error("bad degree list: " + text);
    }
  }
  if (out.empty()) throw Error("bad degree list: " + text);
  return out;
}

counting::PowerSignature signature_from(const std::string& text, std::uint64_t N) {
  if (text == "full") return counting::theorem_signature(N);
  return counting::plain_signature(parse_degrees(text), N);
}

sums::SumKind kind_from(const std::string& s) {
  if (s == "F") return sums::SumKind::Weighted;
  if (s == "f") return sums::SumKind::Smooth;
  if (s == "g") return sums::SumKind::PrimeProduct;
  throw Error("unknown sum kind: " + s + " (expected F, f or g)");
}

// ---- constants

int run_constants(Context& ctx, const std::string& table_path, bool json, bool csv) {
  if (json && csv) throw Error("choose one of --json and --csv");
  if (json) ctx.output.format = "json";
  if (csv) ctx.output.format = "csv";
  const auto table = table_path.empty() ? exponents::PermissibleExponentTable::cited()
                                        : exponents::PermissibleExponentTable::load(table_path);
  const auto rows = exponents::verify_all(table);
  report::Table t;
  t.columns = {"name", "computed", "paper_value", "tolerance", "pass"};
  for (const auto& r : rows) t.add({r.name, r.computed, r.paper_value, r.tolerance, r.pass});
  emit(ctx, t);
  const bool ok = exponents::all_pass(rows);
  ctx.manifest.accuracy["constants"] = ok;
  return ok ? kOk : kCheckFailed;
}

// ---- kernel

int run_gauss_sum(Context& ctx, std::uint64_t q, std::uint64_t a, int k) {
  const auto s = arith::complete_sum(q, a, k);
  const double ratio = s.abs() / (static_cast<double>(q) * arith::omega_k(q, k));
  report::Table t;
  t.columns = {"q", "a", "k", "re", "im", "abs", "ratio-vs-majorant"};
  t.add({q, a, static_cast<std::int64_t>(k), s.re, s.im, s.abs(), ratio});
  emit(ctx, t);
  return kOk;
}

int run_radical(Context& ctx, std::uint64_t d, int k) {
  const auto fast = arith::k_radical(d, k);
  const auto literal = arith::k_radical_literal(d, k);
  report::Table t;
  t.columns = {"d", "k", "radical", "literal", "agree"};
  t.add({d, static_cast<std::int64_t>(k), fast, literal, fast == literal});
  emit(ctx, t);
  return fast == literal ? kOk : kCheckFailed;
}

int run_smooth(Context& ctx, std::uint64_t P, std::uint64_t R, bool count_only) {
  report::Table t;
  if (count_only) {
    const auto count = P <= ctx.params.sieve_budget
                           ? static_cast<std::uint64_t>(arith::smooth_sieve(P, R, ctx.params.sieve_budget).members.size())
                           : arith::smooth_count_chunked(P, R);
    t.columns = {"P", "R", "count"};
    t.add({P, R, count});
  } else {
    const auto set = arith::smooth_sieve(P, R, ctx.params.sieve_budget);
    t.columns = {"x"};
    for (auto x : set.members) t.add({x});
  }
  emit(ctx, t);
  return kOk;
}

// ---- arcs

int run_arcs_build(Context& ctx, double Q, bool star) {
  const auto sys = arcs::build(ctx.params, Q, star);
  if (sys.overlap_warning) std::cerr << "warning: Q exceeds n^(1/2)/2; arcs may overlap\n";
  report::Table t;
  t.columns = {"q", "a", "center", "halfwidth"};
  for (const auto& arc : sys.arcs) t.add({arc.q, arc.a, arc.center, arc.halfwidth});
  emit(ctx, t);
  return kOk;
}

const char* kind_name(arcs::ArcKind k) {
  switch (k) {
    case arcs::ArcKind::Major: return "major";
    case arcs::ArcKind::MajorStar: return "major*";
    case arcs::ArcKind::Minor: return "minor";
  }
  return "?";
}

int run_arcs_classify(Context& ctx, double Q, double alpha, bool star) {
  const auto sys = arcs::build(ctx.params, Q, star);
  const auto label = arcs::classify(alpha, sys);
  report::Table t;
  t.columns = {"alpha", "kind", "q", "a", "beta"};
  t.add({alpha, std::string(kind_name(label.kind)), label.q, label.a, label.beta});
  emit(ctx, t);
  return kOk;
}

// ---- sums

int run_sums_eval(Context& ctx, const std::string& kind, int k, const std::vector<double>& alphas) {
  const sums::ExponentialSum sum({kind_from(kind), k, ctx.params});
  report::Table t;
  t.columns = {"alpha", "re", "im", "abs"};
  for (double a : alphas) {
    const auto v = sum.at(a);
    t.add({a, v.re, v.im, v.abs()});
  }
  emit(ctx, t);
  return kOk;
}

int run_sums_parseval(Context& ctx, const std::string& kind, int k, double Q, double tol) {
  const sums::ExponentialSum sum({kind_from(kind), k, ctx.params});
  const auto sys = arcs::build(ctx.params, Q, false);
  const auto r = sums::moment_over_arcs(sum, 1, sys);
  const double exact = sum.sum_sq_weights();
  const double rel = std::abs(r.total() - exact) / exact;
  const bool ok = rel <= tol;
  report::Table t;
  t.columns = {"kind", "k", "major", "minor", "total", "exact", "rel_error", "panels", "pass"};
  t.add({kind, static_cast<std::int64_t>(k), r.major, r.minor, r.total(), exact, rel,
         static_cast<std::uint64_t>(r.panels), ok});
  emit(ctx, t);
  ctx.manifest.accuracy["sums"] = ok;
  return ok ? kOk : kCheckFailed;
}

// ---- series / integral / maincompare

int run_series(Context& ctx, std::uint64_t qmax, const std::string& degrees, const std::string& per_q) {
  const auto sig = degrees == "full" ? circle::full_signature()
                                     : circle::plain_signature(parse_degrees(degrees));
  const auto s = circle::singular_series(ctx.params.n, qmax, sig);
  report::Table t;
  t.columns = {"n", "qmax", "series", "C", "tail_estimate", "max_imag"};
  t.add({ctx.params.n, qmax, s.value(), s.C, s.tail_estimate, s.max_imag});
  emit(ctx, t);
  if (!per_q.empty()) {
    report::Table pq;
    pq.columns = {"q", "A", "partial"};
    for (std::size_t i = 0; i < s.Aq.size(); ++i) pq.add({s.Aq[i].first, s.Aq[i].second, s.partial[i]});
    report::emit_file(pq, report::Format::Csv, ctx.manifest.id, per_q);
  }
  ctx.manifest.accuracy["series"] = s.max_imag < 1e-9;
  return kOk;
}

int run_integral(Context& ctx, const std::string& B_text, const std::string& weighted) {
  circle::IntegralSpec spec = circle::full_integral_spec();
  if (weighted != "full") {
    spec = circle::IntegralSpec{};
    spec.weighted = parse_degrees(weighted);
  }
  double B = 0;
  if (B_text != "auto") {
    try {
      B = std::stod(B_text);
    } catch (const std::exception&) {
      throw Error("--B expects 'auto' or a number, got " + B_text);
    }
    if (!(B > 0)) throw Error("--B must be positive");
  }
  const auto r = circle::singular_integral(ctx.params.n, B, ctx.params, spec);
  report::Table t;
  t.columns = {"n", "B", "integral", "imag", "v0", "constants", "decayed", "accurate", "bound"};
  t.add({ctx.params.n, r.B, r.value, r.imag, r.at_zero, r.constants, r.decayed, r.accurate, r.bound});
  emit(ctx, t);
  ctx.manifest.accuracy["integral"] = r.accurate && r.decayed;
  return kOk;
}

int run_maincompare(Context& ctx, std::uint64_t start, std::size_t count, const std::string& degrees,
                    std::uint64_t qmax, bool check) {
  const auto rep = circle::main_term_vs_count(start, count, parse_degrees(degrees), ctx.params, qmax);
  report::Table t;
  t.columns = {"n", "count", "mainterm", "ratio"};
  for (const auto& r : rep.rows) t.add({r.n, r.count, r.main, r.ratio});
  emit(ctx, t);
  std::cerr << "mean_ratio=" << report::format_number(rep.mean_ratio)
            << " pooled_ratio=" << report::format_number(rep.pooled_ratio)
            << " solutions=" << rep.solutions << '\n';
  const bool ok = rep.mean_ratio >= 0.8 && rep.mean_ratio <= 1.25;
  ctx.manifest.accuracy["maincompare"] = ok;
  return (check && !ok) ? kCheckFailed : kOk;
}

// ---- count

counting::TableMode mode_from(const std::string& s) {
  if (s == "count") return counting::TableMode::Count;
  if (s == "bitset") return counting::TableMode::Bitset;
  throw Error("unknown table mode: " + s + " (expected count or bitset)");
}

int run_count_table(Context& ctx, const std::string& signature, std::uint64_t limit,
                    const std::string& mode, const std::string& out) {
  const auto sig = signature_from(signature, limit);
  const auto table = counting::build_table(sig, limit, mode_from(mode), ctx.params.table_budget);
  if (!out.empty()) counting::write_table(table, out);
  const auto ex = counting::exceptional_set(table);
  report::Table t;
  t.columns = {"limit", "mode", "exceptional", "largest_exceptional", "saturated"};
  t.add({limit, mode, static_cast<std::uint64_t>(ex.values.size()), ex.largest, table.saturated});
  emit(ctx, t);
  return kOk;
}

int run_count_exceptional(Context& ctx, const std::string& signature, std::uint64_t limit, bool verify) {
  const auto sig = signature_from(signature, limit);
  const auto table = counting::build_table(sig, limit, counting::TableMode::Bitset, ctx.params.table_budget);
  const auto ex = counting::exceptional_set(table);
  bool ok = true;
  if (verify) {
    const auto mitm = counting::mitm_bitset(sig, limit, counting::balanced_split(sig, limit));
    ok = mitm.bits == table.bits;
    std::cerr << "mitm " << (ok ? "agrees" : "DISAGREES") << '\n';
    ctx.manifest.accuracy["count"] = ok;
  }
  report::Table t;
  t.columns = {"n"};
  for (auto v : ex.values) t.add({v});
  if (t.rows.empty()) {
    std::cerr << "no exceptional values up to " << limit << '\n';
  } else {
    emit(ctx, t);
    std::cerr << "largest=" << ex.largest << " total=" << ex.values.size() << '\n';
  }
  return ok ? kOk : kCheckFailed;
}

int run_count_meanvalue(Context& ctx, const std::string& spec_text) {
  const auto spec = counting::parse_mean_value_spec(spec_text);
  const auto mv = counting::mean_value(spec, ctx.params.table_budget);
  report::Table t;
  t.columns = {"spec", "value", "exact", "integral", "left_support", "right_support"};
  t.add({spec_text, mv.value, mv.exact, mv.integral, mv.left_support, mv.right_support});
  emit(ctx, t);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"unlike: circle-method laboratory for sums of unlike powers"};
  app.require_subcommand(1);

  Context ctx;
  std::string config_path;
  std::vector<std::string> overrides;
  app.fallthrough();  // global options may follow the subcommand
  app.add_option("--config", config_path, "key=value parameter file");
  app.add_option("--set", overrides, "parameter override key=value (repeatable)");
  app.add_option("--format", ctx.output.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", ctx.output.out, "write the report here instead of stdout");
  app.add_option("--manifest", ctx.output.manifest_path, "write the run manifest (JSON) here");

  // Flags that override config keys; applied after the config file.
  std::optional<std::uint64_t> n_flag, R_flag;
  std::optional<int> r_flag;
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", n_flag, "target n"); };

  // constants
  auto* constants = app.add_subcommand("constants", "exponent calculus");
  auto* verify = constants->add_subcommand("verify", "recompute and check every constant");
  constants->require_subcommand(1);
  bool json = false, csv = false;
  std::string table_path;
  verify->add_flag("--json", json);
  verify->add_flag("--csv", csv);
  verify->add_option("--table", table_path, "permissible-exponent file (default: built in)");

  // kernel
  auto* kernel = app.add_subcommand("kernel", "arithmetic kernels");
  kernel->require_subcommand(1);
  std::uint64_t kq = 0, ka = 0, kd = 0, kp = 0, kr = 0;
  int kk = 2;
  bool count_only = false;
  auto* gauss = kernel->add_subcommand("gauss-sum", "S_k(q,a)");
  gauss->add_option("--q", kq)->required();
  gauss->add_option("--a", ka)->required();
  gauss->add_option("--k", kk)->required();
  auto* radical = kernel->add_subcommand("radical", "k-th power radical");
  radical->add_option("--d", kd)->required();
  radical->add_option("--k", kk)->required();
  auto* smooth = kernel->add_subcommand("smooth", "R-smooth integers up to P");
  smooth->add_option("--p", kp)->required();
  smooth->add_option("--r", kr)->required();
  smooth->add_flag("--count-only", count_only);

  // arcs
  auto* arcs_cmd = app.add_subcommand("arcs", "Farey arcs");
  arcs_cmd->require_subcommand(1);
  double aQ = 0, alpha = 0;
  bool star = false;
  std::string arcs_out = "csv";
  auto* build = arcs_cmd->add_subcommand("build", "list the arcs");
  add_n(build);
  build->add_option("--q", aQ)->required();
  build->add_flag("--star", star);
  build->add_option("--out", arcs_out)->check(CLI::IsMember({"csv", "json"}));
  auto* classify = arcs_cmd->add_subcommand("classify", "label one alpha");
  add_n(classify);
  classify->add_option("--q", aQ)->required();
  classify->add_option("--alpha", alpha)->required();
  classify->add_flag("--star", star);

  // sums
  auto* sums_cmd = app.add_subcommand("sums", "generating functions");
  sums_cmd->require_subcommand(1);
  std::string kind;
  int sk = 2;
  std::vector<double> alphas;
  double tol = 1e-4, pQ = 100;
  auto* eval = sums_cmd->add_subcommand("eval", "evaluate at alpha");
  eval->add_option("--kind", kind)->required();
  eval->add_option("--k", sk)->required();
  eval->add_option("--alpha", alphas)->required();
  add_n(eval);
  eval->add_option("--r", r_flag, "primes per product (g)");
  eval->add_option("--R", R_flag, "smoothness / prime range bound");
  auto* parseval = sums_cmd->add_subcommand("parseval", "arc-panel mean square vs exact");
  parseval->add_option("--kind", kind)->required();
  parseval->add_option("--k", sk)->required();
  add_n(parseval);
  parseval->add_option("--tol", tol);
  parseval->add_option("--q", pQ, "arc parameter Q");
  parseval->add_option("--r", r_flag);
  parseval->add_option("--R", R_flag);

  // series
  auto* series = app.add_subcommand("series", "truncated singular series");
  std::uint64_t qmax = 400;
  std::string per_q, degrees = "full";
  add_n(series);
  series->add_option("--qmax", qmax);
  series->add_option("--per-q", per_q, "write (q, A(q), partial) CSV here");
  series->add_option("--signature", degrees, "'full' or a degree list like 2,3");

  // integral
  auto* integral = app.add_subcommand("integral", "singular integral");
  std::string B_text = "auto", weighted = "full";
  add_n(integral);
  integral->add_option("--B", B_text);
  integral->add_option("--signature", weighted, "'full' or weighted degrees like 2,3");

  // maincompare
  auto* maincmp = app.add_subcommand("maincompare", "exact weighted count vs main term");
  std::uint64_t n_start = 1000000;
  std::size_t n_count = 100;
  std::string mc_sig = "2,3";
  bool mc_check = false;
  maincmp->add_option("--n-start", n_start);
  maincmp->add_option("--n-count", n_count);
  maincmp->add_option("--signature", mc_sig);
  maincmp->add_option("--qmax", qmax);
  maincmp->add_flag("--check", mc_check, "exit 1 unless the mean ratio is in [0.8, 1.25]");

  // count
  auto* count = app.add_subcommand("count", "representation counting");
  count->require_subcommand(1);
  std::string c_sig = "full", c_mode = "bitset", c_out, mv_spec;
  std::uint64_t limit = 0;
  bool c_verify = false;
  auto* ctable = count->add_subcommand("table", "build a representation table");
  ctable->add_option("--signature", c_sig, "'full' (degrees 2..14) or a degree list");
  ctable->add_option("--limit", limit)->required();
  ctable->add_option("--mode", c_mode);
  ctable->add_option("--out", c_out, "binary table file");
  auto* cex = count->add_subcommand("exceptional", "list non-representable n");
  cex->add_option("--signature", c_sig, "'full' (degrees 2..14) or a degree list");
  cex->add_option("--limit", limit)->required();
  cex->add_flag("--verify", c_verify, "cross-check with meet-in-the-middle");
  auto* cmv = count->add_subcommand("meanvalue", "exact mean value by hash join");
  cmv->add_option("--spec", mv_spec)->required();

  if (argc <= 1) {
    std::cerr << app.help();
    return kUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  int code = kOk;
  try {
    if (!config_path.empty()) ctx.params = load_config(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error("--set expects key=value, got " + kv);
      set_parameter(ctx.params, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (n_flag) ctx.params.n = *n_flag;
    if (R_flag) ctx.params.R = *R_flag;
    if (r_flag) ctx.params.r_k[sk] = *r_flag;
    ctx.params.validate();
    ctx.manifest = report::make_manifest(std::vector<std::string>(argv, argv + argc), ctx.params);

    if (verify->parsed()) {
      code = run_constants(ctx, table_path, json, csv);
    } else if (gauss->parsed()) {
      code = run_gauss_sum(ctx, kq, ka, kk);
    } else if (radical->parsed()) {
      code = run_radical(ctx, kd, kk);
    } else if (smooth->parsed()) {
      code = run_smooth(ctx, kp, kr, count_only);
    } else if (build->parsed()) {
      ctx.output.format = arcs_out;
      code = run_arcs_build(ctx, aQ, star);
    } else if (classify->parsed()) {
      code = run_arcs_classify(ctx, aQ, alpha, star);
    } else if (eval->parsed()) {
      code = run_sums_eval(ctx, kind, sk, alphas);
    } else if (parseval->parsed()) {
      code = run_sums_parseval(ctx, kind, sk, pQ, tol);
    } else if (series->parsed()) {
      code = run_series(ctx, qmax, degrees, per_q);
    } else if (integral->parsed()) {
      code = run_integral(ctx, B_text, weighted);
    } else if (maincmp->parsed()) {
      code = run_maincompare(ctx, n_start, n_count, mc_sig, qmax, mc_check);
    } else if (ctable->parsed()) {
      code = run_count_table(ctx, c_sig, limit, c_mode, c_out);
    } else if (cex->parsed()) {
      code = run_count_exceptional(ctx, c_sig, limit, c_verify);
    } else if (cmv->parsed()) {
      code = run_count_meanvalue(ctx, mv_spec);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kRuntime;
  }

  if (!ctx.output.manifest_path.empty()) {
    ctx.manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ctx.manifest.accuracy["simd:" + std::string(simd::isa_name(simd::active_isa()))] = true;
    std::ofstream m(ctx.output.manifest_path);
    if (!m) {
      std::cerr << "runtime error: unwritable path: " << ctx.output.manifest_path << '\n';
      return kRuntime;
    }
    m << ctx.manifest.json() << '\n';
  }
  return code;
}
