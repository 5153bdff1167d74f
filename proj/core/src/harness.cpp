#include <bivar/harness.hpp>

#include <bivar/convolution.hpp>
#include <bivar/errors.hpp>
#include <bivar/kahan.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <utility>

namespace bivar {

namespace {

std::string base_name(const std::string& function) {
  return function.substr(0, function.find(':'));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

}  // namespace

const std::vector<ExampleInfo>& examples() {
  static const std::vector<ExampleInfo> infos = [] {
    std::vector<ExampleInfo> v;
    auto add = [&v](ExampleInfo e) { v.push_back(std::move(e)); };
    ExampleInfo e1;
    e1.id = "1";
    e1.function = "k_omega";
    e1.default_k = 2;
    e1.variant = Variant::th2i;
    e1.method = Method::direct;
    e1.default_grid = {1000, 3000, 10000};
    add(e1);
    ExampleInfo e2;
    e2.id = "2";
    e2.function = "abs_ramanujan";
    e2.variant = Variant::th2ii;
    e2.method = Method::direct;
    e2.default_grid = {500, 1500, 4000};
    e2.direct_cap = 4000;
    add(e2);
    ExampleInfo e3;
    e3.id = "3";
    e3.function = "sigma_gcd";
    e3.variant = Variant::th2ii;
    e3.method = Method::gcd_composed;
    e3.default_grid = {1e3, 1e4, 1e5, 1e6};
    e3.has_exact_constant = true;
    e3.exact_constant = 1.0;
    e3.closed_form_label = "1";
    add(e3);
    ExampleInfo e4;
    e4.id = "4";
    e4.function = "phi_gcd";
    e4.variant = Variant::th2ii;
    e4.method = Method::gcd_composed;
    e4.default_grid = {1e3, 1e4, 1e5, 1e6};
    e4.has_exact_constant = true;
    e4.exact_constant = 1.0 / (constants::zeta2() * constants::zeta2());
    e4.closed_form_label = "1/zeta(2)^2";
    add(e4);
    ExampleInfo e5a;
    e5a.id = "5a";
    e5a.function = "f1";
    e5a.variant = Variant::th2ii;
    e5a.method = Method::gcd_composed;
    e5a.default_grid = {500, 1500, 4000};
    add(e5a);
    ExampleInfo e5b;
    e5b.id = "5b";
    e5b.function = "f2";
    e5b.variant = Variant::th2ii;
    e5b.method = Method::direct;
    e5b.default_grid = {500, 1500, 4000};
    add(e5b);
    ExampleInfo e6;
    e6.id = "6";
    e6.function = "phi_ratio";
    e6.variant = Variant::th2ii;
    e6.method = Method::direct;
    e6.default_grid = {500, 1500, 4000};
    add(e6);
    ExampleInfo e7;
    e7.id = "7";
    e7.function = "s";
    e7.default_k = 2;
    e7.variant = Variant::th2ii;
    e7.method = Method::phi_weighted;
    e7.default_grid = {1e3, 1e4, 1e5};
    e7.has_exact_constant = true;
    e7.exact_constant = 2.0 / (std::acos(-1.0) * std::acos(-1.0));
    e7.closed_form_label = "2/pi^2";
    e7.series_route = true;
    add(e7);
    ExampleInfo e8;
    e8.id = "8";
    e8.function = "c";
    e8.default_k = 2;
    e8.variant = Variant::th2ii;
    e8.method = Method::phi_weighted;
    e8.default_grid = {1e3, 1e4, 1e5};
    e8.has_exact_constant = true;
    e8.exact_constant = 12.0 / std::pow(std::acos(-1.0), 4.0);
    e8.closed_form_label = "12/pi^4";
    add(e8);
    ExampleInfo e9;
    e9.id = "9";
    e9.function = "A";
    e9.default_k = 2;
    e9.variant = Variant::th2ii;
    e9.method = Method::phi_weighted;
    e9.default_grid = {1e3, 1e4, 1e5};
    add(e9);
    return v;
  }();
  return infos;
}

const ExampleInfo& example_info(const std::string& id) {
  for (const ExampleInfo& e : examples())
    if (e.id == id) return e;
  if (id == "5")
    throw unknown_name("example 5 has members '5a' and '5b'");
  throw unknown_name("unknown example '" + id +
                     "' (1, 2, 3, 4, 5a, 5b, 6, 7, 8, 9)");
}

ExampleConstant example_constant_detail(const std::string& id, int k, u64 pmax,
                                        const ExecPolicy& pol) {
  example_info(id == "5" ? "5a" : id);  // validate id
  if (id == "5")
    throw unknown_name("example 5 has members '5a' and '5b'");
  ExampleConstant out;
  out.id = id;
  out.k = (id == "1") ? k : example_info(id).default_k;
  if (id == "1" && k < 1)
    throw std::domain_error("example 1: k >= 1 required");

  // Simplified weighted local factors (weight already multiplied through and
  // cancelled algebraically, so e.g. example 3 is the literal constant 1).
  std::function<double(u64)> wf;
  if (id == "1") {
    out.prefactor = constants::c_k(k);
    wf = [k](u64 p) { return closed_local_factor("1", p, k); };
  } else if (id == "2") {
    wf = [](u64 p) {
      double q = 1.0 / double(p);
      return 1.0 - 3.0 * q * q + 2.0 * q * q * q;
    };
  } else if (id == "3") {
    wf = [](u64) { return 1.0; };
  } else if (id == "4" || id == "5a") {
    wf = [](u64 p) {
      double u = 1.0 - 1.0 / (double(p) * double(p));
      return u * u;
    };
  } else if (id == "5b") {
    wf = [](u64 p) { return closed_local_factor("5b", p, 1); };
  } else if (id == "6" || id == "9") {
    wf = [](u64 p) {
      double q = 1.0 / double(p);
      double w = (1.0 - q) * (1.0 - q) * (1.0 - q);
      return w * (1.0 + 3.0 * q + q * q);
    };
    if (id == "9") out.prefactor = constants::tilde_c_k_prime(2);
  } else if (id == "7") {
    // s * tilde_mu_2 = delta: the series collapses, the constant is C~2.
    out.series_route = true;
    out.prefactor = constants::tilde_c_k(2);
    out.product = ProductResult{};
    out.product.value = 1.0;
    out.product.pmax = 0;
    out.product.truncation_note = "series route: delta series, no truncation";
    out.value = out.prefactor;
    return out;
  } else if (id == "8") {
    out.prefactor = constants::tilde_c_k_prime(2);
    wf = [](u64 p) {
      double u = 1.0 - 1.0 / (double(p) * double(p));
      return u * u;
    };
  }
  out.product = global_product_closed(wf, pmax, pol);
  out.value = out.prefactor * out.product.value;
  return out;
}

double example_constant(const std::string& id, int k, u64 pmax,
                        const ExecPolicy& pol) {
  return example_constant_detail(id, k, pmax, pol).value;
}

FitResult fit_inverse_log(const std::vector<double>& xs,
                          const std::vector<double>& normalized) {
  if (xs.size() != normalized.size() || xs.empty())
    throw std::invalid_argument("fit_inverse_log: mismatched or empty inputs");
  std::size_t n = xs.size();
  if (n == 1) return {normalized[0], 0.0};
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = 1.0 / std::log(xs[i]);
    st += t;
    sy += normalized[i];
    stt += t * t;
    sty += t * normalized[i];
  }
  double det = double(n) * stt - st * st;
  if (det == 0) return {sy / double(n), 0.0};
  double c1 = (double(n) * sty - st * sy) / det;
  double c0 = (sy - c1 * st) / double(n);
  return {c0, c1};
}

Method best_method(const std::string& function) {
  std::string base = base_name(function);
  if (base == "gcd" || base == "sigma_gcd" || base == "phi_gcd" || base == "f1")
    return Method::gcd_composed;
  if (base == "s" || base == "c" || base == "A") return Method::phi_weighted;
  return Method::direct;
}

SumResult best_sum(const std::string& function, double x, OneVarCache& cache,
                   const ExecPolicy& pol) {
  std::string base = base_name(function);
  switch (best_method(base)) {
    case Method::gcd_composed: {
      std::string table = base == "gcd"         ? "id"
                          : base == "sigma_gcd" ? "sigma"
                          : base == "phi_gcd"   ? "phi"
                                                : "id_musq";
      return partial_sum_gcd_composed(table, x, cache);
    }
    case Method::phi_weighted: {
      if (base == "s")
        return partial_sum_conv_one_weighted("id", ConvWeight::unit, x, cache, pol);
      if (base == "c")
        return partial_sum_conv_one_weighted("phi", ConvWeight::unit, x, cache, pol);
      return partial_sum_conv_one_weighted("id", ConvWeight::phi_over_n, x,
                                           cache, pol);
    }
    default: {
      u64 X = static_cast<u64>(std::floor(std::max(x, 1.0)));
      auto sieve = std::make_shared<FactorSieve>(std::max<u64>(X, 1));
      Builtin b = parse_builtin(function, sieve);
      return partial_sum_direct(b.fn, x, x, pol);
    }
  }
}

namespace {

// Trend verdicts: examples 3/4-style functions must show strictly decreasing
// |abs_err| over the last three rows; 7/8/9-style non-increasing |rel_err|.
// Applied only to grids spanning >= 2 decades.
enum class Trend { none, abs_decreasing, rel_nonincreasing };

Trend trend_for(const std::string& base, Variant v) {
  if (base == "sigma_gcd" || base == "phi_gcd") return Trend::abs_decreasing;
  if (base == "gcd" && v == Variant::th1) return Trend::abs_decreasing;
  if (base == "s" || base == "c" || base == "A") return Trend::rel_nonincreasing;
  return Trend::none;
}

void apply_trend(ConvergenceReport& r, Trend t) {
  if (t == Trend::none) {
    r.note = r.note.empty() ? "no trend criterion registered" : r.note;
    return;
  }
  if (r.rows.size() < 3 ||
      r.rows.back().x / r.rows.front().x < 100.0 - 1e-9) {
    r.note += (r.note.empty() ? "" : "; ");
    r.note += "grid too small for the trend criterion";
    return;
  }
  std::size_t n = r.rows.size();
  if (t == Trend::abs_decreasing) {
    for (std::size_t i = n - 3; i + 1 < n; ++i)
      if (!(std::abs(r.rows[i + 1].abs_err) < std::abs(r.rows[i].abs_err)))
        r.verdict = false;
    if (!r.verdict) r.note += (r.note.empty() ? "" : "; ") + std::string(
        "abs_err not strictly decreasing over the last three rows");
  } else {
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (r.rows[i + 1].rel_err > r.rows[i].rel_err * (1.0 + 1e-12))
        r.verdict = false;
    if (!r.verdict) r.note += (r.note.empty() ? "" : "; ") + std::string(
        "rel_err increased along the grid");
  }
}

ConvergenceReport converge_rows(const std::string& function_with_k, Variant v,
                                int k, const std::vector<double>& xs,
                                double target, OneVarCache& cache,
                                const ExecPolicy& pol) {
  ConvergenceReport r;
  r.function_name = function_with_k;
  r.variant = v;
  r.k = k;
  r.target = target;
  for (double x : xs) {
    ReportRow row;
    row.x = x;
    try {
      row.sum = best_sum(function_with_k, x, cache, pol);
    } catch (const budget_exceeded& e) {
      r.aborted = true;
      r.note += (r.note.empty() ? "" : "; ");
      r.note += std::string("aborted: ") + e.what();
      break;
    }
    row.normalized = row.sum.value / normalization(v, k, x, x);
    row.target = target;
    row.abs_err = std::abs(row.normalized - target);
    row.rel_err = target != 0 ? row.abs_err / std::abs(target) : row.abs_err;
    r.rows.push_back(row);
  }
  std::vector<double> gx, gy;
  for (const ReportRow& row : r.rows) {
    gx.push_back(row.x);
    gy.push_back(row.normalized);
  }
  if (!gx.empty()) r.fit = fit_inverse_log(gx, gy);
  return r;
}

}  // namespace

ConvergenceReport run_convergence(const std::string& function, Variant v, int k,
                                  const std::vector<double>& xs, u64 pmax,
                                  double eps, OneVarCache& cache,
                                  const ExecPolicy& pol) {
  if (function.find(':') != std::string::npos)
    throw unknown_name("run_convergence: pass k separately, not 'name:k'");
  if (!std::is_sorted(xs.begin(), xs.end()))
    throw std::invalid_argument("run_convergence: xs must be ascending");
  auto sieve = std::make_shared<FactorSieve>(100);
  Builtin b = make_builtin(function, k, sieve);
  double target = theorem_limit_product(b.spec, k, v, pmax, eps, pol);
  std::string with_k =
      b.parameterized ? function + ":" + std::to_string(k) : function;
  ConvergenceReport r = converge_rows(with_k, v, k, xs, target, cache, pol);
  r.function_name = function;
  if (!r.aborted) apply_trend(r, trend_for(function, v));
  return r;
}

std::vector<ConvergenceReport> run_example(const std::string& id,
                                           std::vector<double> grid, u64 pmax,
                                           double eps, OneVarCache& cache,
                                           const ExecPolicy& pol) {
  if (id == "5") {
    if (grid.empty()) grid = example_info("5a").default_grid;
    auto a = run_example("5a", grid, pmax, eps, cache, pol);
    auto b = run_example("5b", grid, pmax, eps, cache, pol);
    a.push_back(b.front());
    return a;
  }
  const ExampleInfo& info = example_info(id);
  if (grid.empty()) grid = info.default_grid;
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("run_example: grid must be ascending");
  std::string note;
  if (info.direct_cap > 0) {
    std::size_t before = grid.size();
    grid.erase(std::remove_if(grid.begin(), grid.end(),
                              [&](double x) { return x > info.direct_cap; }),
               grid.end());
    note = "direct summation capped at x = " + fmt(info.direct_cap);
    if (grid.size() != before)
      note += " (" + std::to_string(before - grid.size()) +
              " grid points above the cap dropped)";
    if (grid.empty())
      throw std::invalid_argument("run_example: grid entirely above the cap");
  }
  int k = info.default_k;
  double target = example_constant(id, k, pmax, pol);
  Builtin probe = make_builtin(info.function, k,
                               std::make_shared<FactorSieve>(2));
  std::string with_k =
      probe.parameterized ? info.function + ":" + std::to_string(k)
                          : info.function;
  ConvergenceReport r =
      converge_rows(with_k, info.variant, k, grid, target, cache, pol);
  r.function_name = info.function;
  if (!note.empty()) r.note = note + (r.note.empty() ? "" : "; " + r.note);
  if (!r.aborted) {
    Trend t = Trend::none;
    if (id == "3" || id == "4") t = Trend::abs_decreasing;
    if (id == "7" || id == "8" || id == "9") t = Trend::rel_nonincreasing;
    apply_trend(r, t);
  }
  return {r};
}

SecondOrderCheck second_order_check(const std::string& which, double x,
                                    OneVarCache& cache, double tolerance) {
  if (!(tolerance > 0))
    throw std::domain_error("second_order_check: tolerance > 0 required");
  SecondOrderCheck c;
  c.which = which;
  c.x = x;
  c.tolerance = tolerance;
  double g2 = 2.0 * constants::euler_gamma() - 0.5 - constants::zeta2() / 2.0;
  if (which == "ex3") {
    SumResult s = partial_sum_gcd_composed("sigma", x, cache);
    c.measured = s.value / (x * x) - std::log(x);
    c.predicted = g2;
  } else if (which == "ex4") {
    SumResult s = partial_sum_gcd_composed("phi", x, cache);
    double z2sq = constants::zeta2() * constants::zeta2();
    c.measured = s.value / (x * x) - std::log(x) / z2sq;
    c.predicted = (g2 - 2.0 * constants::zeta2_prime() / constants::zeta2()) / z2sq;
  } else {
    throw unknown_name("second_order_check: unknown check '" + which +
                       "' (ex3, ex4)");
  }
  c.pass = std::abs(c.measured - c.predicted) < tolerance;
  return c;
}

// ---------------------------------------------------------------------------
// Verification suites.

namespace {

void add_check(SuiteReport& rep, const std::string& label,
               const std::function<std::pair<bool, std::string>()>& body) {
  CheckLine line;
  line.label = label;
  try {
    auto [ok, detail] = body();
    line.pass = ok;
    line.detail = detail;
  } catch (const std::exception& e) {
    line.pass = false;
    line.detail = std::string("exception: ") + e.what();
  }
  rep.all_pass = rep.all_pass && line.pass;
  rep.checks.push_back(std::move(line));
}

LocalTable table_from(const std::function<i128(u64, u32, u32)>& loc, u64 p,
                      u32 numax) {
  LocalTable t(p, numax);
  for (u32 a = 0; a <= numax; ++a)
    for (u32 b = 0; b <= numax; ++b) t.set(a, b, loc(p, a, b));
  return t;
}

DenseTable2 random_table(std::mt19937& rng, u32 bound, i128 lead) {
  std::uniform_int_distribution<int> dist(-9, 9);
  DenseTable2 t(bound);
  for (u32 i = 1; i <= bound; ++i)
    for (u32 j = 1; j <= bound; ++j) t.set(i, j, dist(rng));
  if (lead != 0) t.set(1, 1, lead);
  return t;
}

SuiteReport suite_lemma9(const ExecPolicy&) {
  SuiteReport rep;
  rep.suite = "lemma9";
  add_check(rep, "inverse of tau_k equals the signed-binomial table", [] {
    int cases = 0;
    for (u32 k : {1u, 2u, 3u, 4u})
      for (u64 p : {2ull, 3ull, 5ull, 7ull}) {
        LocalTable tau = table_from(
            [k](u64, u32 a, u32 b) { return tau_k_local(k, a, b); }, p, 6);
        LocalTable mu = table_from(
            [k](u64, u32 a, u32 b) { return mu_k_local(k, a, b); }, p, 6);
        if (!(inverse_local(tau) == mu)) return std::pair{false,
            "mismatch at k=" + std::to_string(k) + ", p=" + std::to_string(p)};
        ++cases;
      }
    return std::pair{true, std::to_string(cases) + " (k,p) tables, exact"};
  });
  add_check(rep, "mu_k satisfies mu_k = mu_{k-1} * mu_1 locally", [] {
    for (u32 k : {2u, 3u, 4u, 5u})
      for (u64 p : {2ull, 3ull}) {
        LocalTable prev = table_from(
            [k](u64, u32 a, u32 b) { return mu_k_local(k - 1, a, b); }, p, 6);
        LocalTable one_inv = table_from(
            [](u64, u32 a, u32 b) { return mu_k_local(1, a, b); }, p, 6);
        LocalTable expect = table_from(
            [k](u64, u32 a, u32 b) { return mu_k_local(k, a, b); }, p, 6);
        if (!(convolve_local(prev, one_inv) == expect))
          return std::pair{false, "recurrence fails at k=" + std::to_string(k) +
                                      ", p=" + std::to_string(p)};
      }
    return std::pair{true, std::string("k = 2..5, p in {2,3}, exponents <= 6")};
  });
  add_check(rep, "tau_k * mu_k = delta on a dense 30x30 grid", [] {
    auto sieve = std::make_shared<FactorSieve>(30);
    for (int k : {2, 3}) {
      Builtin tau = make_builtin("tau_k", k, sieve);
      Builtin mu = make_builtin("mu_k", k, sieve);
      DenseTable2 prod = convolve_table(DenseTable2::from_fn(tau.fn, 30),
                                        DenseTable2::from_fn(mu.fn, 30));
      if (!(prod == DenseTable2::delta(30)))
        return std::pair{false, "k=" + std::to_string(k)};
    }
    return std::pair{true, std::string("k in {2,3}, exact")};
  });
  add_check(rep, "tau_k counts ordered factorizations", [] {
    auto sieve = std::make_shared<FactorSieve>(16);
    Builtin t2 = make_builtin("tau_k", 2, sieve);
    Builtin t3 = make_builtin("tau_k", 3, sieve);
    bool ok = t2.fn.at(12, 1) == 6 && t2.fn.at(16, 16) == 25 &&
              t3.fn.at(4, 1) == 6 && t3.fn.at(1, 1) == 1;
    return std::pair{ok, std::string("divisor-count spot values")};
  });
  return rep;
}

SuiteReport suite_lemma10(const ExecPolicy&) {
  SuiteReport rep;
  rep.suite = "lemma10";
  add_check(rep, "inverse of gcd equals the five-case table", [] {
    for (u64 p : {2ull, 3ull, 5ull, 7ull}) {
      LocalTable gcd_t = table_from(
          [](u64 pp, u32 a, u32 b) { return ipow(i128(pp), std::min(a, b)); },
          p, 6);
      LocalTable expect = table_from(
          [](u64 pp, u32 a, u32 b) { return tilde_mu_local(pp, a, b); }, p, 6);
      if (!(inverse_local(gcd_t) == expect))
        return std::pair{false, "p=" + std::to_string(p)};
    }
    return std::pair{true, std::string("p in {2,3,5,7}, exponents <= 6, exact")};
  });
  add_check(rep, "tilde_mu_k * tilde_tau_k = delta locally", [] {
    for (u32 k : {1u, 2u, 3u})
      for (u64 p : {2ull, 3ull, 5ull}) {
        LocalTable mu_t = table_from(
            [k](u64 pp, u32 a, u32 b) { return tilde_mu_k_local(k, pp, a, b); },
            p, 5);
        LocalTable tau_t = table_from(
            [k](u64 pp, u32 a, u32 b) { return tilde_tau_k_local(k, pp, a, b); },
            p, 5);
        LocalTable delta = table_from(
            [](u64, u32 a, u32 b) -> i128 { return a == 0 && b == 0; }, p, 5);
        if (!(convolve_local(mu_t, tau_t) == delta))
          return std::pair{false, "k=" + std::to_string(k) +
                                      ", p=" + std::to_string(p)};
      }
    return std::pair{true, std::string("k in {1,2,3}, p in {2,3,5}")};
  });
  add_check(rep, "gcd * tilde_mu = delta on a dense 30x30 grid", [] {
    auto sieve = std::make_shared<FactorSieve>(30);
    Builtin g = make_builtin("gcd", 1, sieve);
    Builtin mu = make_builtin("tilde_mu_k", 1, sieve);
    DenseTable2 prod = convolve_table(DenseTable2::from_fn(g.fn, 30),
                                      DenseTable2::from_fn(mu.fn, 30));
    return std::pair{prod == DenseTable2::delta(30), std::string("exact")};
  });
  add_check(rep, "five-case spot values", [] {
    bool ok = tilde_mu_local(2, 0, 0) == 1 && tilde_mu_local(2, 1, 0) == -1 &&
              tilde_mu_local(2, 1, 1) == 0 && tilde_mu_local(3, 1, 1) == -1 &&
              tilde_mu_local(2, 2, 1) == 1 && tilde_mu_local(5, 3, 2) == 4 &&
              tilde_mu_local(2, 2, 2) == -2 && tilde_mu_local(2, 4, 1) == 0;
    return std::pair{ok, std::string("eight hand values")};
  });
  return rep;
}

SuiteReport suite_lemma7(const ExecPolicy&) {
  SuiteReport rep;
  rep.suite = "lemma7";
  add_check(rep, "delta table: both sides equal 1", [] {
    auto [lhs, rhs] = abel2d_check_exact(DenseTable2::delta(4), 2, 3);
    return std::pair{lhs == Rat(1) && rhs == Rat(1), std::string("exact")};
  });
  add_check(rep, "ones table at x = y = 3: both sides equal (11/6)^2", [] {
    auto [lhs, rhs] = abel2d_check_exact(DenseTable2::ones(3), 3, 3);
    Rat expect(121, 36);
    return std::pair{lhs == expect && rhs == expect, to_string(lhs)};
  });
  add_check(rep, "100 random 20x20 tables: identity exact in rationals", [] {
    std::mt19937 rng(20250815u);
    std::uniform_int_distribution<u32> coord(1, 20);
    for (int trial = 0; trial < 100; ++trial) {
      DenseTable2 t = random_table(rng, 20, 0);
      u32 x = coord(rng), y = coord(rng);
      auto [lhs, rhs] = abel2d_check_exact(t, x, y);
      if (!(lhs == rhs))
        return std::pair{false, "trial " + std::to_string(trial)};
    }
    return std::pair{true, std::string("100 trials, exact")};
  });
  add_check(rep, "float mode agrees within 1e-12", [] {
    std::mt19937 rng(77001u);
    std::uniform_int_distribution<u32> coord(1, 20);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
      DenseTable2 t = random_table(rng, 20, 0);
      u32 x = coord(rng), y = coord(rng);
      auto [lhs, rhs] = abel2d_check(t, x, y);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    return std::pair{worst < 1e-12, "worst rel diff " + fmt(worst)};
  });
  return rep;
}

SuiteReport suite_local_factors(const ExecPolicy& pol) {
  SuiteReport rep;
  rep.suite = "local_factors";
  auto sieve = std::make_shared<FactorSieve>(16);
  const double eps = 1e-15, tol = 1e-12;
  const std::vector<u64> ps = {2, 3, 5, 7, 11};

  struct Entry {
    std::string id, function;
    int k;
    Variant v;
  };
  const std::vector<Entry> entries = {
      {"1", "k_omega", 2, Variant::th2i}, {"1", "k_omega", 3, Variant::th2i},
      {"2", "abs_ramanujan", 1, Variant::th2ii},
      {"3", "sigma_gcd", 1, Variant::th2ii},
      {"4", "phi_gcd", 1, Variant::th2ii}, {"5a", "f1", 1, Variant::th2ii},
      {"5b", "f2", 1, Variant::th2ii},     {"6", "phi_ratio", 1, Variant::th2ii},
  };
  add_check(rep, "adaptive local factors match the registered closed forms", [&] {
    double worst = 0;
    for (const Entry& e : entries) {
      Builtin b = make_builtin(e.function, e.k, sieve);
      for (u64 p : ps) {
        double closed = closed_local_factor(e.id, p, e.k);
        double got = closed_local_weight_exponent(e.id, e.k) == 0
                         ? local_factor(b.spec, p, eps).value
                         : weighted_local_factor(b.spec, p, e.k, e.v, eps);
        worst = std::max(worst, std::abs(got - closed));
        if (std::abs(got - closed) >= tol)
          return std::pair{false, "example " + e.id + " (k=" +
                                      std::to_string(e.k) + ") at p=" +
                                      std::to_string(p) + ": |diff| = " +
                                      fmt(std::abs(got - closed))};
      }
    }
    return std::pair{true, "worst |diff| " + fmt(worst)};
  });
  add_check(rep, "local factor of one is 1/(1-1/p)^2 (4 at p = 2)", [&] {
    Builtin one = make_builtin("one", 1, sieve);
    for (u64 p : ps) {
      double q = 1.0 / double(p);
      double expect = 1.0 / ((1.0 - q) * (1.0 - q));
      if (std::abs(local_factor(one.spec, p, eps).value - expect) >= tol)
        return std::pair{false, "p=" + std::to_string(p)};
    }
    bool at2 = std::abs(local_factor(one.spec, 2, eps).value - 4.0) < tol;
    return std::pair{at2, std::string("p in {2,3,5,7,11}")};
  });
  add_check(rep, "local factor of gcd is (1-1/p^2)/(1-1/p)^3", [&] {
    Builtin g = make_builtin("gcd", 1, sieve);
    for (u64 p : ps) {
      double q = 1.0 / double(p);
      double expect = (1.0 - q * q) / ((1.0 - q) * (1.0 - q) * (1.0 - q));
      if (std::abs(local_factor(g.spec, p, eps).value - expect) >= tol)
        return std::pair{false, "p=" + std::to_string(p)};
    }
    return std::pair{true, std::string("p in {2,3,5,7,11}")};
  });
  add_check(rep, "tilde_mu and gcd local factors multiply to 1", [&] {
    Builtin g = make_builtin("gcd", 1, sieve);
    Builtin mu = make_builtin("tilde_mu_k", 1, sieve);
    double worst = 0;
    for (u64 p : ps) {
      double prod = local_factor(g.spec, p, eps).value *
                    local_factor(mu.spec, p, eps).value;
      worst = std::max(worst, std::abs(prod - 1.0));
    }
    return std::pair{worst < tol, "worst |prod - 1| " + fmt(worst)};
  });
  add_check(rep, "sigma_gcd th2ii product is 1 at every pmax", [&] {
    Builtin sg = make_builtin("sigma_gcd", 1, sieve);
    for (u64 pmax : {100ull, 10000ull}) {
      double v = global_product(sg.spec, 1, Variant::th2ii, pmax, eps, pol).value;
      if (std::abs(v - 1.0) >= tol)
        return std::pair{false, "pmax=" + std::to_string(pmax) +
                                    ": |v - 1| = " + fmt(std::abs(v - 1.0))};
    }
    return std::pair{true, std::string("pmax in {100, 10000}")};
  });
  add_check(rep, "truncation is monotone within the per-prime tail heuristic", [&] {
    Builtin pg = make_builtin("phi_gcd", 1, sieve);
    ProductResult lo = global_product(pg.spec, 1, Variant::th2ii, 1000, eps, pol);
    ProductResult hi = global_product(pg.spec, 1, Variant::th2ii, 10000, eps, pol);
    double nlo = double(primes_up_to(1000).size());
    double nhi = double(primes_up_to(10000).size());
    double bound = lo.value * lo.per_prime_tail * (nhi - nlo) * 1.01;
    bool ok = std::abs(hi.value - lo.value) <= bound;
    return std::pair{ok, "|V(10P) - V(P)| = " + fmt(std::abs(hi.value - lo.value)) +
                             " vs bound " + fmt(bound)};
  });
  return rep;
}

SuiteReport suite_method_agreement(const ExecPolicy& pol) {
  SuiteReport rep;
  rep.suite = "method_agreement";
  auto sieve = std::make_shared<FactorSieve>(300);
  OneVarCache cache;
  add_check(rep, "gcd_composed equals direct for Id, sigma, phi, Id*mu^2", [&] {
    for (const char* fname : {"gcd", "sigma_gcd", "phi_gcd", "f1"}) {
      Builtin b = make_builtin(fname, 1, sieve);
      for (double x : {50.0, 137.0, 300.0}) {
        SumResult direct = partial_sum_direct(b.fn, x, x, pol);
        SumResult fast = best_sum(fname, x, cache, pol);
        if (!direct.exact || !fast.exact || *direct.exact != *fast.exact)
          return std::pair{false, std::string(fname) + " at x=" + fmt(x)};
      }
    }
    return std::pair{true, std::string("x in {50, 137, 300}, exact")};
  });
  add_check(rep, "conv_one equals direct on g * one", [&] {
    Builtin one = make_builtin("one", 1, sieve);
    for (const char* gname : {"gcd", "phi_gcd", "delta"}) {
      Builtin g = make_builtin(gname, 1, sieve);
      Fn2 h;
      h.name = std::string(gname) + "*one";
      h.integer_valued = true;
      const FactorSieve* sv = sieve.get();
      h.eval_int = [g, one, sv](u64 n1, u64 n2) {
        return convolve_at(g.fn, one.fn, *sv, n1, n2);
      };
      h.eval_real = [h_int = h.eval_int](u64 n1, u64 n2) {
        return double(h_int(n1, n2));
      };
      for (double x : {30.0, 100.0}) {
        SumResult direct = partial_sum_direct(h, x, x, pol);
        SumResult fast = partial_sum_conv_one(g.fn, x, pol);
        if (!direct.exact || !fast.exact || *direct.exact != *fast.exact)
          return std::pair{false, std::string(gname) + " at x=" + fmt(x)};
      }
    }
    return std::pair{true, std::string("g in {gcd, phi_gcd, delta}, x in {30, 100}")};
  });
  add_check(rep, "phi-weighted rewrite equals conv_one for s and c", [&] {
    Builtin g = make_builtin("gcd", 1, sieve);
    Builtin pg = make_builtin("phi_gcd", 1, sieve);
    for (double x : {100.0, 250.0}) {
      SumResult s1 = partial_sum_conv_one(g.fn, x, pol);
      SumResult s2 =
          partial_sum_conv_one_weighted("id", ConvWeight::unit, x, cache, pol);
      SumResult c1 = partial_sum_conv_one(pg.fn, x, pol);
      SumResult c2 =
          partial_sum_conv_one_weighted("phi", ConvWeight::unit, x, cache, pol);
      if (*s1.exact != *s2.exact || *c1.exact != *c2.exact)
        return std::pair{false, "x=" + fmt(x)};
    }
    return std::pair{true, std::string("x in {100, 250}, exact")};
  });
  add_check(rep, "phi-weighted rewrite matches conv_one for A (floats)", [&] {
    Builtin pr = make_builtin("phi_ratio", 1, sieve);
    double worst = 0;
    for (double x : {60.0, 150.0}) {
      double a1 = partial_sum_conv_one(pr.fn, x, pol).value;
      double a2 = partial_sum_conv_one_weighted("id", ConvWeight::phi_over_n, x,
                                                cache, pol)
                      .value;
      worst = std::max(worst, std::abs(a1 - a2) / std::abs(a1));
    }
    return std::pair{worst < 1e-9, "worst rel diff " + fmt(worst)};
  });
  add_check(rep, "convolution is commutative on random tables", [&] {
    std::mt19937 rng(424242u);
    for (int trial = 0; trial < 8; ++trial) {
      DenseTable2 f = random_table(rng, 24, 0);
      DenseTable2 g = random_table(rng, 24, 0);
      if (!(convolve_table(f, g) == convolve_table(g, f)))
        return std::pair{false, "trial " + std::to_string(trial)};
    }
    return std::pair{true, std::string("8 random 24x24 pairs")};
  });
  add_check(rep, "convolution is associative on random tables", [&] {
    std::mt19937 rng(88771u);
    for (int trial = 0; trial < 6; ++trial) {
      DenseTable2 f = random_table(rng, 16, 0);
      DenseTable2 g = random_table(rng, 16, 0);
      DenseTable2 h = random_table(rng, 16, 0);
      if (!(convolve_table(convolve_table(f, g), h) ==
            convolve_table(f, convolve_table(g, h))))
        return std::pair{false, "trial " + std::to_string(trial)};
    }
    return std::pair{true, std::string("6 random 16x16 triples")};
  });
  add_check(rep, "f * inverse(f) = delta for unit leading value", [&] {
    std::mt19937 rng(20250815u);
    for (int trial = 0; trial < 6; ++trial) {
      DenseTable2 f = random_table(rng, 16, trial % 2 ? 1 : -1);
      if (!(convolve_table(f, inverse_table(f)) == DenseTable2::delta(16)))
        return std::pair{false, "trial " + std::to_string(trial)};
    }
    return std::pair{true, std::string("6 random 16x16 tables, leads +-1")};
  });
  add_check(rep, "rational inverse works for non-unit leading value", [&] {
    std::mt19937 rng(5150u);
    DenseTable2 f = random_table(rng, 10, 3);
    RatTable2 inv = inverse_table_rat(f);
    for (u32 n1 = 1; n1 <= 10; ++n1)
      for (u32 n2 = 1; n2 <= 10; ++n2) {
        Rat acc(0);
        for (u32 d1 = 1; d1 <= n1; ++d1) {
          if (n1 % d1) continue;
          for (u32 d2 = 1; d2 <= n2; ++d2) {
            if (n2 % d2) continue;
            acc = acc + Rat(f.at(d1, d2)) * inv.at(n1 / d1, n2 / d2);
          }
        }
        Rat expect(n1 == 1 && n2 == 1 ? 1 : 0);
        if (!(acc == expect))
          return std::pair{false,
                           "(" + std::to_string(n1) + "," + std::to_string(n2) + ")"};
      }
    return std::pair{true, std::string("10x10 table with f(1,1) = 3, exact")};
  });
  add_check(rep, "spec evaluation equals the general evaluators", [&] {
    const std::vector<std::string> names = builtin_names();
    for (const std::string& name : names) {
      int k = builtin_is_parameterized(name) ? 2 : 1;
      Builtin b = make_builtin(name, k, sieve);
      for (u64 n1 : {1ull, 2ull, 12ull, 36ull, 49ull, 60ull})
        for (u64 n2 : {1ull, 3ull, 8ull, 36ull, 50ull, 60ull}) {
          if (b.fn.integer_valued) {
            if (eval_multiplicative(b.spec, *sieve, n1, n2) != b.fn.at(n1, n2))
              return std::pair{false, name + " at (" + std::to_string(n1) +
                                          "," + std::to_string(n2) + ")"};
          } else {
            double s = eval_multiplicative_real(b.spec, *sieve, n1, n2);
            double d = b.fn.at_real(n1, n2);
            if (std::abs(s - d) > 1e-12 * std::max(1.0, std::abs(d)))
              return std::pair{false, name + " at (" + std::to_string(n1) +
                                          "," + std::to_string(n2) + ")"};
          }
        }
    }
    return std::pair{true, std::to_string(names.size()) + " builtins, 36 points each"};
  });
  return rep;
}

SuiteReport suite_constants(const ExecPolicy&) {
  SuiteReport rep;
  rep.suite = "constants";
  add_check(rep, "c_k = 1/((k-1)!)^2 for k = 1..6", [] {
    const Rat expect[] = {Rat(1),     Rat(1),      Rat(1, 4),
                          Rat(1, 36), Rat(1, 576), Rat(1, 14400)};
    for (int k = 1; k <= 6; ++k)
      if (!(constants::c_k_rat(k) == expect[k - 1]))
        return std::pair{false, "k=" + std::to_string(k)};
    return std::pair{true, std::string("exact rationals")};
  });
  add_check(rep, "tilde c_k' = 1/(((k-1)!)^2 (2k-1)) for k = 1..6", [] {
    const Rat expect[] = {Rat(1),      Rat(1, 3),    Rat(1, 20),
                          Rat(1, 252), Rat(1, 5184), Rat(1, 158400)};
    for (int k = 1; k <= 6; ++k)
      if (!(constants::tilde_c_k_prime_rat(k) == expect[k - 1]))
        return std::pair{false, "k=" + std::to_string(k)};
    return std::pair{true, std::string("exact rationals")};
  });
  add_check(rep, "tilde c_2' = 1/3 exactly", [] {
    return std::pair{constants::tilde_c_k_prime_rat(2) == Rat(1, 3),
                     to_string(constants::tilde_c_k_prime_rat(2))};
  });
  add_check(rep, "tilde c_k' = zeta(2) * tilde c_k for k = 1..6", [] {
    double worst = 0;
    for (int k = 1; k <= 6; ++k) {
      double lhs = constants::tilde_c_k_prime(k);
      double rhs = constants::zeta2() * constants::tilde_c_k(k);
      worst = std::max(worst, std::abs(lhs - rhs) / lhs);
    }
    return std::pair{worst < 1e-15, "worst rel diff " + fmt(worst)};
  });
  add_check(rep, "zeta(2) = pi^2/6 and gamma literal", [] {
    bool ok = std::abs(constants::zeta2() - 1.6449340668482264) < 1e-15 &&
              std::abs(constants::euler_gamma() - 0.5772156649015329) < 1e-15;
    return std::pair{ok, fmt(constants::zeta2())};
  });
  add_check(rep, "zeta'(2) from Euler-Maclaurin", [] {
    double v = constants::zeta2_prime();
    double frozen = -0.9375482543158437537;
    return std::pair{std::abs(v - frozen) < 1e-12, fmt(v)};
  });
  add_check(rep, "second-order constants of the gcd-sum expansions", [] {
    double g2 = 2.0 * constants::euler_gamma() - 0.5 - constants::zeta2() / 2.0;
    double z2sq = constants::zeta2() * constants::zeta2();
    double p4 = (g2 - 2.0 * constants::zeta2_prime() / constants::zeta2()) / z2sq;
    bool ok = std::abs(g2 - (-0.16803570362104747)) < 1e-12 &&
              std::abs(p4 - 0.35918522389491847) < 1e-12;
    return std::pair{ok, fmt(g2) + ", " + fmt(p4)};
  });
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "lemma9",        "lemma10",          "lemma7",
      "local_factors", "method_agreement", "constants"};
  return names;
}

SuiteReport run_suite(const std::string& name, const ExecPolicy& pol) {
  if (name == "lemma9") return suite_lemma9(pol);
  if (name == "lemma10") return suite_lemma10(pol);
  if (name == "lemma7") return suite_lemma7(pol);
  if (name == "local_factors") return suite_local_factors(pol);
  if (name == "method_agreement") return suite_method_agreement(pol);
  if (name == "constants") return suite_constants(pol);
  std::string msg = "unknown suite '" + name + "'; valid:";
  for (const std::string& s : suite_names()) msg += " " + s;
  throw unknown_name(msg);
}

}  // namespace bivar
