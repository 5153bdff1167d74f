#pragma once

// Experiment orchestration: per-example limit constants, convergence tables
// of empirical normalized means against those constants, second-order
// checks of the gcd-sum expansions, and the named verification suites.

#include <bivar/builtins.hpp>
#include <bivar/euler.hpp>
#include <bivar/summation.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bivar {

struct ExampleInfo {
  std::string id;          // "1".."9"; example 5 has members "5a", "5b"
  std::string function;    // builtin name
  int default_k = 1;
  Variant variant = Variant::th2ii;
  Method method = Method::direct;     // fastest exact method for the example
  std::vector<double> default_grid;
  double direct_cap = 0;              // nonzero: largest x allowed (example 2)
  bool has_exact_constant = false;
  double exact_constant = 0;
  std::string closed_form_label;      // e.g. "2/pi^2" when exact
  bool series_route = false;          // example 7: constant-free product
};

const std::vector<ExampleInfo>& examples();
const ExampleInfo& example_info(const std::string& id);  // unknown_name otherwise

// Theoretical constant via the registered closed weighted factors (product
// route) or the delta series (example 7). k only varies for example 1.
double example_constant(const std::string& id, int k, u64 pmax,
                        const ExecPolicy& pol = {});

// Same computation keeping the product diagnostics (CLI report surface).
struct ExampleConstant {
  std::string id;
  int k = 1;
  double value = 0;
  double prefactor = 1;      // C_k / C~k' scalar in front of the product
  ProductResult product;     // pmax = 0 for the series route
  bool series_route = false;
};
ExampleConstant example_constant_detail(const std::string& id, int k, u64 pmax,
                                        const ExecPolicy& pol = {});

struct FitResult {
  double c0 = 0, c1 = 0;  // least squares for normalized ~ c0 + c1/log x
};
FitResult fit_inverse_log(const std::vector<double>& xs,
                          const std::vector<double>& normalized);

struct ReportRow {
  double x = 0;
  SumResult sum;
  double normalized = 0, target = 0, abs_err = 0, rel_err = 0;
};

struct ConvergenceReport {
  std::string function_name;
  Variant variant = Variant::th2ii;
  int k = 1;
  std::vector<ReportRow> rows;  // ascending x; target identical across rows
  FitResult fit;
  double target = 0;
  bool verdict = true;  // trend criteria applicable to the function/example
  bool aborted = false; // a row hit the point budget; rows hold the prefix
  std::string note;
};

// Empirical sum for a builtin at x, routed to its fastest exact method:
// gcd_composed for gcd/sigma_gcd/phi_gcd/f1, phi_weighted for s/c/A,
// direct otherwise.
SumResult best_sum(const std::string& function, double x, OneVarCache& cache,
                   const ExecPolicy& pol = {});
Method best_method(const std::string& function);

ConvergenceReport run_convergence(const std::string& function, Variant v, int k,
                                  const std::vector<double>& xs, u64 pmax,
                                  double eps, OneVarCache& cache,
                                  const ExecPolicy& pol = {});

// Example runner; example 5 yields both members (grid shared), others one
// report. Empty grid selects the example's default.
std::vector<ConvergenceReport> run_example(const std::string& id,
                                           std::vector<double> grid, u64 pmax,
                                           double eps, OneVarCache& cache,
                                           const ExecPolicy& pol = {});

struct SecondOrderCheck {
  std::string which;     // "ex3" or "ex4"
  double x = 0;
  double measured = 0;   // S(x)/x^2 minus the leading log term
  double predicted = 0;  // second-order constant from the Constants store
  double tolerance = 0.05;
  bool pass = false;
};
SecondOrderCheck second_order_check(const std::string& which, double x,
                                    OneVarCache& cache, double tolerance = 0.05);

struct CheckLine {
  std::string label;
  bool pass = false;
  std::string detail;
};
struct SuiteReport {
  std::string suite;
  std::vector<CheckLine> checks;
  bool all_pass = true;
};

// Suites: lemma9, lemma10, lemma7, local_factors, method_agreement, constants.
const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const ExecPolicy& pol = {});

}  // namespace bivar
