// bivar: command-line surface over the two-variable convolution library.
//
// Subcommands
//   constant  --example ID [--k K]            limit constant, JSON report
//   converge  --function F --variant V --k K --xs a,b,...   CSV (or JSON)
//   check     --suite NAME                    PASS/FAIL lines + JSON summary
//   convolve  --f F --g G --n1 A --n2 B       single convolution value
//   inverse   --f F --n1 A --n2 B             single Dirichlet-inverse value
//
// Exit codes: 0 success / all checks pass, 1 computational failure or suite
// failure, 2 usage error. Floats print with 17 significant digits in JSON
// (round-trip safe) and 15 in CSV/plain output. All output is byte-stable
// for a fixed configuration (threads included; they set the reduction block
// count).

#include <bivar/bivar.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace bivar;

struct CliConfig {
  int threads = 0;  // resolved to hardware concurrency when left 0
  u64 point_budget = 200'000'000;
  u64 pmax = 1'000'000;
  double eps = 1e-12;
  std::string out_path;
};

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string jquote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\', out += c;
    else if (c == '\n') out += "\\n";
    else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else out += c;
  }
  return out + "\"";
}

// Flat JSON objects are emitted by hand so the 17-digit float contract (and
// exact integer raw sums wider than a double) survive serialization.
class JsonObj {
 public:
  void field(const std::string& k, const std::string& raw) {
    body_ += (body_.empty() ? "" : ",");
    body_ += jquote(k) + ":" + raw;
  }
  void str(const std::string& k, const std::string& v) { field(k, jquote(v)); }
  void num(const std::string& k, double v) { field(k, num17(v)); }
  void integer(const std::string& k, i64 v) { field(k, std::to_string(v)); }
  void uinteger(const std::string& k, u64 v) { field(k, std::to_string(v)); }
  void boolean(const std::string& k, bool v) { field(k, v ? "true" : "false"); }
  std::string done() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
};

std::string raw_sum_token(const SumResult& s, bool json) {
  if (s.exact) return to_string(*s.exact);
  return json ? num17(s.value) : num15(s.value);
}

int cmd_constant(std::ostream& os, const CliConfig& cfg, const ExecPolicy& pol,
                 const std::string& id, int k_flag) {
  int k = k_flag;
  if (k <= 0) k = example_info(id == "5" ? "5a" : id).default_k;
  ExampleConstant d = example_constant_detail(id, k, cfg.pmax, pol);
  const ExampleInfo& info = example_info(id);
  JsonObj rep;
  rep.str("example", d.id);
  rep.integer("k", d.k);
  if (info.has_exact_constant && (id != "1" || k == info.default_k)) {
    rep.str("closed_form", info.closed_form_label);
    rep.num("closed_form_value", info.exact_constant);
  }
  rep.num("product_value", d.value);
  rep.num("per_prime_tail", d.product.per_prime_tail);
  rep.uinteger("pmax", d.product.pmax);
  rep.integer("threads", pol.threads);
  if (!d.product.truncation_note.empty())
    rep.str("note", d.product.truncation_note);
  os << rep.done() << "\n";
  return 0;
}

int cmd_converge(std::ostream& os, const CliConfig& cfg, const ExecPolicy& pol,
                 const std::string& function, const std::string& variant,
                 int k, std::vector<double> xs, const std::string& format) {
  Variant v = parse_variant(variant);
  OneVarCache cache;
  ConvergenceReport r =
      run_convergence(function, v, k, xs, cfg.pmax, cfg.eps, cache, pol);
  if (format == "json") {
    JsonObj rep;
    rep.str("function", r.function_name);
    rep.str("variant", variant_name(r.variant));
    rep.integer("k", r.k);
    rep.num("target", r.target);
    rep.uinteger("pmax", cfg.pmax);
    rep.integer("threads", pol.threads);
    std::string rows;
    for (const ReportRow& row : r.rows) {
      JsonObj jr;
      jr.num("x", row.x);
      jr.field("raw_sum", raw_sum_token(row.sum, true));
      jr.num("normalized", row.normalized);
      jr.num("target", row.target);
      jr.num("abs_err", row.abs_err);
      jr.num("rel_err", row.rel_err);
      rows += (rows.empty() ? "" : ",");
      rows += jr.done();
    }
    rep.field("rows", "[" + rows + "]");
    JsonObj fit;
    fit.num("c0", r.fit.c0);
    fit.num("c1", r.fit.c1);
    rep.field("fit", fit.done());
    rep.boolean("verdict", r.verdict);
    rep.boolean("aborted", r.aborted);
    if (!r.note.empty()) rep.str("note", r.note);
    os << rep.done() << "\n";
    return r.aborted ? 1 : 0;
  }
  os << "x,raw_sum,normalized,target,abs_err,rel_err\n";
  for (const ReportRow& row : r.rows) {
    os << num15(row.x) << "," << raw_sum_token(row.sum, false) << ","
       << num15(row.normalized) << "," << num15(row.target) << ","
       << num15(row.abs_err) << "," << num15(row.rel_err) << "\n";
  }
  if (r.aborted) {
    os << "# aborted\n";
    return 1;
  }
  os << "# fit c0=" << num15(r.fit.c0) << " c1=" << num15(r.fit.c1) << "\n";
  return 0;
}

int report_suite(std::ostream& os, const SuiteReport& rep) {
  int failed = 0;
  for (const CheckLine& c : rep.checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << rep.suite << ": " << c.label;
    if (!c.detail.empty()) os << "  [" << c.detail << "]";
    os << "\n";
    if (!c.pass) ++failed;
  }
  return failed;
}

int cmd_check(std::ostream& os, const ExecPolicy& pol, const std::string& suite) {
  std::vector<SuiteReport> reports;
  if (suite == "all") {
    for (const std::string& name : suite_names())
      reports.push_back(run_suite(name, pol));
  } else {
    reports.push_back(run_suite(suite, pol));
  }
  int checks = 0, failed = 0;
  std::string items;
  for (const SuiteReport& rep : reports) {
    failed += report_suite(os, rep);
    checks += int(rep.checks.size());
    JsonObj item;
    item.str("suite", rep.suite);
    item.integer("checks", i64(rep.checks.size()));
    item.boolean("all_pass", rep.all_pass);
    items += (items.empty() ? "" : ",");
    items += item.done();
  }
  JsonObj summary;
  summary.field("suites", "[" + items + "]");
  summary.integer("checks", checks);
  summary.integer("failed", failed);
  summary.boolean("all_pass", failed == 0);
  summary.integer("threads", pol.threads);
  os << summary.done() << "\n";
  return failed == 0 ? 0 : 1;
}

constexpr u64 kPointMax = 10'000'000;  // sieve cap for convolve/inverse

std::shared_ptr<const FactorSieve> point_sieve(u64 n1, u64 n2) {
  if (n1 < 1 || n2 < 1 || n1 > kPointMax || n2 > kPointMax)
    throw std::invalid_argument("n1, n2 must lie in [1, 10^7]");
  return std::make_shared<const FactorSieve>(std::max({n1, n2, u64(2)}));
}

int cmd_convolve(std::ostream& os, const std::string& f, const std::string& g,
                 u64 n1, u64 n2) {
  auto sieve = point_sieve(n1, n2);
  Builtin bf = parse_builtin(f, sieve);
  Builtin bg = parse_builtin(g, sieve);
  if (bf.fn.integer_valued && bg.fn.integer_valued)
    os << to_string(convolve_at(bf.fn, bg.fn, *sieve, n1, n2)) << "\n";
  else
    os << num15(convolve_at_real(bf.fn, bg.fn, *sieve, n1, n2)) << "\n";
  return 0;
}

// Local float inversion for the non-integer builtins (phi_ratio, A); the
// integer path goes through the exact lattice recursion.
double inverse_local_real(const PrimePowerSpec& spec, u64 p, u32 a, u32 b) {
  u32 m = std::max(a, b);
  std::vector<double> G((m + 1) * (std::size_t(m) + 1), 0.0);
  auto at = [&](u32 i, u32 j) -> double& { return G[std::size_t(i) * (m + 1) + j]; };
  double lead = spec.local_real(p, 0, 0);
  if (lead == 0) throw not_invertible(spec.name + ": local(p,0,0) = 0");
  at(0, 0) = 1.0 / lead;
  for (u32 i = 0; i <= m; ++i)
    for (u32 j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      double acc = 0;
      for (u32 u = 0; u <= i; ++u)
        for (u32 w = 0; w <= j; ++w) {
          if (u == 0 && w == 0) continue;
          acc += spec.local_real(p, u, w) * at(i - u, j - w);
        }
      at(i, j) = -acc / lead;
    }
  return at(a, b);
}

int cmd_inverse(std::ostream& os, const std::string& f, u64 n1, u64 n2) {
  auto sieve = point_sieve(n1, n2);
  Builtin b = parse_builtin(f, sieve);
  Factorization f1 = sieve->factorize(n1), f2 = sieve->factorize(n2);
  // merge the two sorted prime lists
  struct PV { u64 p; u32 a, b; };
  std::vector<PV> merged;
  std::size_t i = 0, j = 0;
  while (i < f1.pairs.size() || j < f2.pairs.size()) {
    if (j >= f2.pairs.size() ||
        (i < f1.pairs.size() && f1.pairs[i].first < f2.pairs[j].first)) {
      merged.push_back({f1.pairs[i].first, f1.pairs[i].second, 0});
      ++i;
    } else if (i >= f1.pairs.size() || f2.pairs[j].first < f1.pairs[i].first) {
      merged.push_back({f2.pairs[j].first, 0, f2.pairs[j].second});
      ++j;
    } else {
      merged.push_back({f1.pairs[i].first, f1.pairs[i].second, f2.pairs[j].second});
      ++i, ++j;
    }
  }
  if (b.fn.integer_valued) {
    i128 acc = 1;
    for (const PV& pv : merged) {
      LocalTable F = LocalTable::from_spec(b.spec, pv.p, std::max(pv.a, pv.b));
      acc = checked_mul(acc, inverse_local(F).at(pv.a, pv.b));
    }
    os << to_string(acc) << "\n";
  } else {
    double acc = 1;
    for (const PV& pv : merged)
      acc *= inverse_local_real(b.spec, pv.p, pv.a, pv.b);
    os << num15(acc) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-variable multiplicative function toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global options remain valid after the subcommand

  CliConfig cfg;
  app.add_option("--threads", cfg.threads,
                 "reduction blocks / worker threads (default: hardware)")
      ->envname("BIVAR_THREADS")
      ->check(CLI::PositiveNumber);
  app.add_option("--point-budget", cfg.point_budget,
                 "refuse sums that would visit more lattice points than this");
  app.add_option("--pmax", cfg.pmax, "Euler products truncate at this prime");
  app.add_option("--eps", cfg.eps, "local-factor truncation tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out_path, "write the report here instead of stdout");

  auto* c_const = app.add_subcommand("constant", "limit constant of an example");
  std::string example_id;
  int k_flag = 0;
  c_const->add_option("--example", example_id, "example id (1..9, 5a, 5b)")
      ->required();
  c_const->add_option("--k", k_flag, "parameter k (example 1 only)");

  auto* c_conv = app.add_subcommand("converge", "normalized means along a grid");
  std::string function, variant, format = "csv";
  int k = 1;
  std::vector<double> xs;
  c_conv->add_option("--function", function, "builtin name")->required();
  c_conv->add_option("--variant", variant, "th1 | th2i | th2ii")->required();
  c_conv->add_option("--k", k, "convolution depth parameter");
  c_conv->add_option("--xs", xs, "ascending grid, comma separated")
      ->required()
      ->delimiter(',');
  c_conv->add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* c_check = app.add_subcommand("check", "run a verification suite");
  std::string suite;
  c_check->add_option("--suite", suite, "suite name or 'all'")->required();

  auto* c_convolve = app.add_subcommand("convolve", "single convolution value");
  std::string fname, gname;
  u64 n1 = 1, n2 = 1;
  c_convolve->add_option("--f", fname)->required();
  c_convolve->add_option("--g", gname)->required();
  c_convolve->add_option("--n1", n1)->required();
  c_convolve->add_option("--n2", n2)->required();

  auto* c_inverse = app.add_subcommand("inverse", "Dirichlet-inverse value");
  std::string iname;
  u64 m1 = 1, m2 = 1;
  c_inverse->add_option("--f", iname)->required();
  c_inverse->add_option("--n1", m1)->required();
  c_inverse->add_option("--n2", m2)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cfg.threads <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    cfg.threads = hw ? int(hw) : 1;
  }
  bivar::ExecPolicy pol;
  pol.threads = cfg.threads;
  pol.point_budget = cfg.point_budget;

  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      std::cerr << "cannot open --out file: " << cfg.out_path << "\n";
      return 2;
    }
  }
  std::ostream& os = file.is_open() ? file : std::cout;

  try {
    if (c_const->parsed()) return cmd_constant(os, cfg, pol, example_id, k_flag);
    if (c_conv->parsed())
      return cmd_converge(os, cfg, pol, function, variant, k, xs, format);
    if (c_check->parsed()) return cmd_check(os, pol, suite);
    if (c_convolve->parsed()) return cmd_convolve(os, fname, gname, n1, n2);
    if (c_inverse->parsed()) return cmd_inverse(os, iname, m1, m2);
  } catch (const bivar::unknown_name& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
