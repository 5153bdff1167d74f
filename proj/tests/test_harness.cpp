#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bivar/harness.hpp>

#include <cmath>
#include <numbers>

using namespace bivar;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("example registry covers 1..9 with 5 split in two") {
  CHECK(examples().size() == 10);
  for (const char* id : {"1", "2", "3", "4", "5a", "5b", "6", "7", "8", "9"})
    CHECK_NOTHROW(example_info(id));
  CHECK_THROWS_AS(example_info("5"), unknown_name);
  CHECK_THROWS_AS(example_info("10"), unknown_name);
  CHECK(example_info("2").direct_cap == 4000);
  CHECK(example_info("7").series_route);
  CHECK(example_info("3").has_exact_constant);
  CHECK(example_info("1").variant == Variant::th2i);
  CHECK(example_info("9").variant == Variant::th2ii);
}

TEST_CASE("limit constants: exact and closed-product values") {
  const u64 pmax = 200000;
  // example 3 is the literal constant 1 - bitwise, not approximately
  CHECK(example_constant("3", 1, pmax) == 1.0);
  // example 1 at k = 1 degenerates to 1 as well
  CHECK(example_constant("1", 1, pmax) == 1.0);
  // example 7 is the series-route constant C~2 = 2/pi^2, no truncation at all
  CHECK(example_constant("7", 2, 100) ==
        doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-15));
  // products truncated at 2*10^5: tails are ~1e-6 relative or smaller
  CHECK(example_constant("4", 1, pmax) ==
        doctest::Approx(36.0 / (kPi * kPi * kPi * kPi)).epsilon(1e-5));
  CHECK(example_constant("5a", 1, pmax) ==
        doctest::Approx(36.0 / (kPi * kPi * kPi * kPi)).epsilon(1e-5));
  CHECK(example_constant("8", 2, pmax) ==
        doctest::Approx(12.0 / (kPi * kPi * kPi * kPi)).epsilon(1e-5));
  // frozen reference decimals for the examples without a closed form
  CHECK(example_constant("2", 1, pmax) ==
        doctest::Approx(0.2867474867366326).epsilon(1e-5));
  CHECK(example_constant("5b", 1, pmax) ==
        doctest::Approx(0.11488409079779884).epsilon(1e-5));
  CHECK(example_constant("6", 1, pmax) ==
        doctest::Approx(0.1423641922724554).epsilon(1e-5));
  CHECK(example_constant("9", 2, pmax) ==
        doctest::Approx(0.04745473075748513).epsilon(1e-5));
  CHECK_THROWS_AS(example_constant("5", 1, pmax), unknown_name);
}

TEST_CASE("example constant detail carries product diagnostics") {
  ExampleConstant d = example_constant_detail("8", 2, 10000);
  CHECK(d.prefactor == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(d.product.pmax == 10000);
  CHECK(d.value == doctest::Approx(d.prefactor * d.product.value).epsilon(1e-15));
  ExampleConstant s = example_constant_detail("7", 2, 10000);
  CHECK(s.series_route);
  CHECK(s.product.pmax == 0);
  CHECK(s.value == s.prefactor);
}

TEST_CASE("inverse-log fit recovers planted coefficients") {
  std::vector<double> xs = {100, 1000, 10000, 100000};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(0.75 - 2.5 / std::log(x));
  FitResult f = fit_inverse_log(xs, ys);
  CHECK(f.c0 == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(f.c1 == doctest::Approx(-2.5).epsilon(1e-12));
  // degenerate single point: c0 is the value, no slope
  FitResult g = fit_inverse_log({100}, {0.6});
  CHECK(g.c0 == 0.6);
  CHECK(g.c1 == 0.0);
  CHECK_THROWS_AS(fit_inverse_log({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(fit_inverse_log({1, 2}, {1}), std::invalid_argument);
}

TEST_CASE("best_method routes to the registered accelerations") {
  CHECK(best_method("gcd") == Method::gcd_composed);
  CHECK(best_method("sigma_gcd") == Method::gcd_composed);
  CHECK(best_method("phi_gcd") == Method::gcd_composed);
  CHECK(best_method("f1") == Method::gcd_composed);
  CHECK(best_method("s") == Method::phi_weighted);
  CHECK(best_method("c") == Method::phi_weighted);
  CHECK(best_method("A") == Method::phi_weighted);
  CHECK(best_method("tau_k:3") == Method::direct);
  CHECK(best_method("abs_ramanujan") == Method::direct);
}

TEST_CASE("best_sum equals the direct sum on small boxes") {
  OneVarCache cache;
  auto sv = std::make_shared<const FactorSieve>(90);
  for (const char* name : {"gcd", "s", "c", "abs_ramanujan", "tau_k"}) {
    Builtin b = make_builtin(name, 1, sv);
    SumResult fast = best_sum(name, 90, cache);
    SumResult slow = partial_sum_direct(b.fn, 90, 90);
    REQUIRE(fast.exact.has_value());
    CHECK(*fast.exact == *slow.exact);
  }
}

TEST_CASE("run_convergence on the gcd mean walks toward 1/zeta(2)") {
  OneVarCache cache;
  ConvergenceReport r = run_convergence("gcd", Variant::th1, 1,
                                        {1000, 10000, 100000}, 100000, 1e-13,
                                        cache);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.target == doctest::Approx(6.0 / (kPi * kPi)).epsilon(1e-4));
  CHECK(*r.rows[0].sum.exact == 4449880);
  CHECK(*r.rows[1].sum.exact == 584509280);
  CHECK(*r.rows[2].sum.exact == 72434344904LL);
  // strictly decreasing absolute error, final below 0.05
  CHECK(std::abs(r.rows[1].abs_err) < std::abs(r.rows[0].abs_err));
  CHECK(std::abs(r.rows[2].abs_err) < std::abs(r.rows[1].abs_err));
  CHECK(r.rows[2].abs_err < 0.05);
  CHECK(r.verdict);
  CHECK(!r.aborted);
  // normalized values divide by the real bounds
  CHECK(r.rows[0].normalized ==
        doctest::Approx(4449880.0 / (1e6 * std::log(1000.0))).epsilon(1e-14));
}

TEST_CASE("run_convergence validates its inputs") {
  OneVarCache cache;
  CHECK_THROWS_AS(run_convergence("gcd", Variant::th1, 1, {100, 50}, 1000, 1e-12,
                                  cache),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_convergence("tau_k:2", Variant::th2i, 2, {100}, 1000,
                                  1e-12, cache),
                  unknown_name);
  CHECK_THROWS_AS(run_convergence("nosuch", Variant::th1, 1, {100}, 1000, 1e-12,
                                  cache),
                  unknown_name);
}

TEST_CASE("run_convergence flags a budget abort instead of throwing") {
  OneVarCache cache;
  ExecPolicy tight;
  tight.point_budget = 2000;  // 50^2 fits, 200^2 does not
  ConvergenceReport r = run_convergence("abs_ramanujan", Variant::th2ii, 1,
                                        {40, 200}, 1000, 1e-12, cache, tight);
  CHECK(r.aborted);
  CHECK(r.rows.size() == 1);
  CHECK(r.note.find("aborted") != std::string::npos);
}

TEST_CASE("run_example: defaults, member split, and the direct cap") {
  OneVarCache cache;
  ExecPolicy pol;
  pol.threads = 2;
  auto both = run_example("5", {500, 1500}, 50000, 1e-13, cache, pol);
  REQUIRE(both.size() == 2);
  CHECK(both[0].function_name == "f1");
  CHECK(both[1].function_name == "f2");
  CHECK(both[0].rows.size() == 2);
  CHECK(both[0].target == doctest::Approx(both[0].target));

  auto capped = run_example("2", {500, 1500, 4000, 50000}, 20000, 1e-13, cache, pol);
  REQUIRE(capped.size() == 1);
  CHECK(capped[0].rows.size() == 3);  // the 50000 point is dropped
  CHECK(capped[0].note.find("capped") != std::string::npos);
  CHECK_THROWS_AS(run_example("2", {50000}, 1000, 1e-12, cache, pol),
                  std::invalid_argument);
}

TEST_CASE("second-order checks at modest x stay within the loose band") {
  OneVarCache cache;
  // x = 20000 is already close; tolerance through the public default 0.05
  SecondOrderCheck a = second_order_check("ex3", 20000, cache);
  CHECK(a.pass);
  CHECK(a.predicted == doctest::Approx(-0.16803570362104747).epsilon(1e-12));
  SecondOrderCheck b = second_order_check("ex4", 20000, cache);
  CHECK(b.pass);
  CHECK(b.predicted == doctest::Approx(0.35918522389491847).epsilon(1e-12));
  CHECK_THROWS_AS(second_order_check("ex5", 100, cache), unknown_name);
  CHECK_THROWS_AS(second_order_check("ex3", 100, cache, -1.0), std::domain_error);
}

TEST_CASE("suite registry and a fast end-to-end pass") {
  CHECK(suite_names().size() == 6);
  CHECK_THROWS_AS(run_suite("nosuch"), unknown_name);
  // constants suite is pure arithmetic: must always pass
  SuiteReport rep = run_suite("constants");
  CHECK(rep.all_pass);
  CHECK(rep.checks.size() >= 5);
  for (const CheckLine& c : rep.checks) CHECK_MESSAGE(c.pass, c.label);
}
