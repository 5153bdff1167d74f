#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bivar/builtins.hpp>
#include <bivar/summation.hpp>

#include <cmath>
#include <memory>
#include <random>

using namespace bivar;

namespace {
std::shared_ptr<const FactorSieve> sieve(u64 bound) {
  return std::make_shared<const FactorSieve>(bound);
}
}  // namespace

TEST_CASE("direct sum: tiny boxes by hand") {
  auto sv = sieve(10);
  Builtin g = make_builtin("gcd", 1, sv);
  SumResult r = partial_sum_direct(g.fn, 2, 2);
  REQUIRE(r.exact.has_value());
  CHECK(*r.exact == 5);
  CHECK(r.value == 5.0);
  CHECK(r.terms == 4);
  CHECK(r.method == Method::direct);
  // bounds are floored once at entry
  SumResult r2 = partial_sum_direct(g.fn, 2.9, 2.2);
  CHECK(*r2.exact == 5);
  // asymmetric box
  SumResult r3 = partial_sum_direct(g.fn, 3, 2);
  CHECK(*r3.exact == 1 + 1 + 1 + 2 + 1 + 1);  // gcd over 3 x 2
}

TEST_CASE("direct sum of a real-valued function is compensated") {
  auto sv = sieve(100);
  Builtin pr = make_builtin("phi_ratio", 1, sv);
  SumResult r = partial_sum_direct(pr.fn, 30, 30);
  CHECK(!r.exact.has_value());
  double brute = 0;
  for (u64 a = 1; a <= 30; ++a)
    for (u64 b = 1; b <= 30; ++b) brute += pr.fn.at_real(a, b);
  CHECK(r.value == doctest::Approx(brute).epsilon(1e-11));
}

TEST_CASE("point budget refuses, never truncates") {
  auto sv = sieve(10);
  Builtin g = make_builtin("gcd", 1, sv);
  ExecPolicy tight;
  tight.point_budget = 10;
  CHECK_THROWS_AS(partial_sum_direct(g.fn, 4, 4, tight), budget_exceeded);
  CHECK_NOTHROW(partial_sum_direct(g.fn, 3, 3, tight));
  // huge bounds must not overflow the budget check itself
  ExecPolicy normal;
  CHECK_THROWS_AS(partial_sum_direct(g.fn, 4e9, 4e9, normal), budget_exceeded);
}

TEST_CASE("gcd-composed acceleration equals direct summation") {
  auto sv = sieve(120);
  OneVarCache cache;
  for (const char* name : {"gcd", "sigma_gcd", "phi_gcd", "f1"}) {
    Builtin b = make_builtin(name, 1, sv);
    const char* table = b.fn.name == "gcd"         ? "id"
                        : b.fn.name == "sigma_gcd" ? "sigma"
                        : b.fn.name == "phi_gcd"   ? "phi"
                                                   : "id_musq";
    for (double x : {1.0, 2.0, 17.0, 120.0}) {
      SumResult fast = partial_sum_gcd_composed(table, x, cache);
      SumResult slow = partial_sum_direct(b.fn, x, x);
      CHECK(*fast.exact == *slow.exact);
      CHECK(fast.method == Method::gcd_composed);
    }
  }
}

TEST_CASE("gcd-composed frozen values") {
  OneVarCache cache;
  CHECK(*partial_sum_gcd_composed("sigma", 2, cache).exact == 6);
  CHECK(*partial_sum_gcd_composed("id", 1000, cache).exact == 4449880);
  CHECK(*partial_sum_gcd_composed("id", 10000, cache).exact == 584509280);
  CHECK(*partial_sum_gcd_composed("id", 100000, cache).exact == 72434344904LL);
  CHECK_THROWS_AS(partial_sum_gcd_composed("nosuch", 10, cache), unknown_name);
}

TEST_CASE("conv_one acceleration equals direct summation of g * one") {
  auto sv = sieve(60);
  Builtin g = make_builtin("gcd", 1, sv);
  Builtin s = make_builtin("s", 1, sv);  // s = gcd * one
  for (double x : {2.0, 10.0, 60.0}) {
    SumResult fast = partial_sum_conv_one(g.fn, x);
    SumResult slow = partial_sum_direct(s.fn, x, x);
    CHECK(*fast.exact == *slow.exact);
  }
  CHECK(*partial_sum_conv_one(g.fn, 2).exact == 10);
}

TEST_CASE("phi-weighted acceleration: frozen desk-scale values") {
  OneVarCache cache;
  CHECK(*partial_sum_conv_one_weighted("id", ConvWeight::unit, 1000, cache).exact ==
        107876007);
  CHECK(*partial_sum_conv_one_weighted("id", ConvWeight::unit, 10000, cache).exact ==
        22961011018LL);
  CHECK(*partial_sum_conv_one_weighted("phi", ConvWeight::unit, 1000, cache).exact ==
        77945952);
  CHECK(*partial_sum_conv_one_weighted("phi", ConvWeight::unit, 10000, cache).exact ==
        16053025196LL);
}

TEST_CASE("phi-weighted float path matches conv_one on phi_ratio * one") {
  auto sv = sieve(80);
  OneVarCache cache;
  Builtin pr = make_builtin("phi_ratio", 1, sv);
  for (double x : {10.0, 80.0}) {
    SumResult a = partial_sum_conv_one(pr.fn, x);
    SumResult b =
        partial_sum_conv_one_weighted("id", ConvWeight::phi_over_n, x, cache);
    CHECK(b.value == doctest::Approx(a.value).epsilon(1e-12));
    CHECK(b.method == Method::phi_weighted);
  }
}

TEST_CASE("float sums are bit-stable for a fixed block count") {
  auto sv = sieve(200);
  Builtin pr = make_builtin("phi_ratio", 1, sv);
  for (int threads : {1, 3, 8}) {
    ExecPolicy pol;
    pol.threads = threads;
    SumResult a = partial_sum_direct(pr.fn, 200, 200, pol);
    SumResult b = partial_sum_direct(pr.fn, 200, 200, pol);
    CHECK(a.value == b.value);  // bitwise
    CHECK(a.blocks == b.blocks);
  }
}

TEST_CASE("one-variable cache: mobius transforms and guards") {
  OneVarCache cache;
  // (Id * mu) = phi
  const auto& phi_direct = cache.table("phi", 300);
  const auto& phi_via_mobius = cache.mobius("id", 300);
  for (u64 n = 1; n <= 300; ++n) CHECK(phi_direct[n] == phi_via_mobius[n]);
  // (one * mu) = delta1
  const auto& d = cache.mobius("one", 100);
  CHECK(d[1] == 1);
  for (u64 n = 2; n <= 100; ++n) CHECK(d[n] == 0);
  CHECK_THROWS_AS(cache.table("nosuch", 10), unknown_name);
  CHECK_THROWS_AS(cache.table("id", (u64(1) << 28) + 1), capacity_error);
}

TEST_CASE("normalization denominators use the real bounds") {
  // th1
  CHECK(normalization(Variant::th1, 1, 10, 20) ==
        doctest::Approx(10.0 * 20.0 * std::log(10.0)));
  // th2i with k = 2
  CHECK(normalization(Variant::th2i, 2, 100, 50) ==
        doctest::Approx(100.0 * 50.0 * std::log(100.0) * std::log(50.0)));
  // th2ii ignores y entirely
  CHECK(normalization(Variant::th2ii, 2, 100, 3) ==
        doctest::Approx(100.0 * 100.0 * std::pow(std::log(100.0), 3.0)));
  CHECK(normalization(Variant::th2ii, 1, 50, 1) ==
        doctest::Approx(50.0 * 50.0 * std::log(50.0)));
  // fractional x: the denominator is not floored
  CHECK(normalization(Variant::th1, 1, 10.5, 10.5) ==
        doctest::Approx(10.5 * 10.5 * std::log(10.5)));
}

TEST_CASE("normalization domain guards") {
  CHECK_THROWS_AS(normalization(Variant::th1, 1, 2.0, 10.0), std::domain_error);
  CHECK_THROWS_AS(normalization(Variant::th1, 1, 10.0, 2.0), std::domain_error);
  CHECK_NOTHROW(normalization(Variant::th2ii, 1, 10.0, 2.0));  // y unused
  CHECK_THROWS_AS(normalization(Variant::th2ii, 0, 10.0, 10.0), std::domain_error);
  CHECK_THROWS_AS(normalization(Variant::th1, 1, std::exp(1.0), 10.0),
                  std::domain_error);
}

TEST_CASE("normalized mean of one tends to its exact box ratio") {
  auto sv = sieve(100);
  Builtin one = make_builtin("one", 1, sv);
  NormalizedMean m = normalized_mean(one.fn, Variant::th1, 1, 10, 10);
  CHECK(m.normalized == doctest::Approx(100.0 / (100.0 * std::log(10.0))));
  // floor(10.7) = 10 points per side but real denominators
  NormalizedMean m2 = normalized_mean(one.fn, Variant::th1, 1, 10.7, 10.7);
  CHECK(m2.normalized ==
        doctest::Approx(100.0 / (10.7 * 10.7 * std::log(10.7))));
}

TEST_CASE("lemma log-sums match brute force") {
  // lemma1: sum log^alpha(n)/n
  for (double alpha : {0.0, 1.0, 2.5}) {
    double brute = 0;
    for (u64 n = 1; n <= 50; ++n) brute += std::pow(std::log(double(n)), alpha) / double(n);
    CHECK(lemma1_sum(alpha, 50) == doctest::Approx(brute).epsilon(1e-13));
  }
  CHECK(lemma1_sum(0, 1) == 1.0);  // 0^0 = 1 convention at n = 1

  // lemma4: sum over the box of log(min)
  double brute4 = 0;
  for (u64 a = 1; a <= 7; ++a)
    for (u64 b = 1; b <= 9; ++b) brute4 += std::log(double(std::min(a, b)));
  CHECK(lemma4_sum(7, 9) == doctest::Approx(brute4).epsilon(1e-13));
  CHECK(lemma4_sum(3, 3) == doctest::Approx(3 * std::log(2.0) + std::log(3.0)));

  // lemma5: sum log(min)/(n1 n2)
  double brute5 = 0;
  for (u64 a = 1; a <= 40; ++a)
    for (u64 b = 1; b <= 40; ++b)
      brute5 += std::log(double(std::min(a, b))) / double(a * b);
  CHECK(lemma5_sum(40) == doctest::Approx(brute5).epsilon(1e-12));

  // lemma6: weighted log(min(x/n1, x/n2)) sums
  for (double alpha : {0.0, 1.0})
    for (double beta : {0.0, 2.0}) {
      const double x = 25;
      double brute6 = 0;
      for (u64 a = 1; a <= 25; ++a)
        for (u64 b = 1; b <= 25; ++b)
          brute6 += std::pow(std::log(double(a)), alpha) *
                    std::pow(std::log(double(b)), beta) *
                    std::log(std::min(x / double(a), x / double(b))) /
                    double(a * b);
      CHECK(lemma6_sum(alpha, beta, x) == doctest::Approx(brute6).epsilon(1e-11));
    }
}

TEST_CASE("2D partial summation identity: exact and float modes") {
  // ones table at x = y = 3: both sides are (11/6)^2
  auto [lhs, rhs] = abel2d_check_exact(DenseTable2::ones(3), 3, 3);
  CHECK(lhs == Rat(121, 36));
  CHECK(rhs == Rat(121, 36));
  // random tables, exact equality in rationals
  std::mt19937 rng(31415u);
  std::uniform_int_distribution<int> dist(-9, 9);
  std::uniform_int_distribution<u32> coord(1, 12);
  for (int trial = 0; trial < 25; ++trial) {
    DenseTable2 t(12);
    for (u32 i = 1; i <= 12; ++i)
      for (u32 j = 1; j <= 12; ++j) t.set(i, j, dist(rng));
    u32 x = coord(rng), y = coord(rng);
    auto [l, r] = abel2d_check_exact(t, x, y);
    CHECK(l == r);
    auto [lf, rf] = abel2d_check(t, x, y);
    CHECK(lf == doctest::Approx(l.to_double()).epsilon(1e-12));
    CHECK(rf == doctest::Approx(lf).epsilon(1e-12));
  }
}
