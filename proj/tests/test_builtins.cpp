#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bivar/builtins.hpp>
#include <bivar/fn2.hpp>

#include <memory>

using namespace bivar;

namespace {
std::shared_ptr<const FactorSieve> sieve() {
  static auto s = std::make_shared<const FactorSieve>(1000);
  return s;
}
i128 val(const std::string& name, u64 n1, u64 n2, int k = 1) {
  return make_builtin(name, k, sieve()).fn.at(n1, n2);
}
double rval(const std::string& name, u64 n1, u64 n2) {
  return make_builtin(name, 1, sieve()).fn.at_real(n1, n2);
}
}  // namespace

TEST_CASE("registry lists all eighteen names") {
  const auto& names = builtin_names();
  CHECK(names.size() == 18);
  for (const char* n :
       {"one", "delta", "gcd", "lcm", "sigma_gcd", "phi_gcd", "k_omega",
        "abs_ramanujan", "f1", "f2", "phi_ratio", "s", "c", "A", "tau_k",
        "mu_k", "tilde_tau_k", "tilde_mu_k"}) {
    bool found = false;
    for (const auto& name : names) found = found || name == n;
    CHECK_MESSAGE(found, n);
  }
  CHECK(builtin_is_parameterized("tau_k"));
  CHECK(builtin_is_parameterized("k_omega"));
  CHECK(!builtin_is_parameterized("gcd"));
  CHECK(!builtin_is_integer_valued("phi_ratio"));
  CHECK(!builtin_is_integer_valued("A"));
  CHECK(builtin_is_integer_valued("s"));
}

TEST_CASE("pointwise basics: one, delta, gcd, lcm") {
  CHECK(val("one", 7, 9) == 1);
  CHECK(val("delta", 1, 1) == 1);
  CHECK(val("delta", 1, 2) == 0);
  CHECK(val("delta", 2, 1) == 0);
  CHECK(val("gcd", 4, 6) == 2);
  CHECK(val("gcd", 7, 9) == 1);
  CHECK(val("lcm", 4, 6) == 12);
  CHECK(val("lcm", 1, 1) == 1);
}

TEST_CASE("composed gcd functions") {
  CHECK(val("sigma_gcd", 4, 6) == 3);   // sigma(2)
  CHECK(val("sigma_gcd", 12, 18) == 12); // sigma(6)
  CHECK(val("phi_gcd", 4, 6) == 1);     // phi(2)
  CHECK(val("phi_gcd", 12, 18) == 2);   // phi(6)
  CHECK(val("phi_gcd", 1, 5) == 1);
}

TEST_CASE("k_omega counts distinct primes of the product") {
  CHECK(val("k_omega", 2, 3, 2) == 4);   // omega(6) = 2
  CHECK(val("k_omega", 4, 2, 3) == 3);   // only the prime 2
  CHECK(val("k_omega", 1, 1, 5) == 1);   // empty product
  CHECK(val("k_omega", 30, 77, 2) == 32);  // 5 distinct primes
}

TEST_CASE("abs_ramanujan spot values") {
  // |c_q(n)|; q = first argument
  CHECK(val("abs_ramanujan", 1, 5) == 1);
  CHECK(val("abs_ramanujan", 2, 2) == 1);   // f(p,p) = p-1
  CHECK(val("abs_ramanujan", 3, 3) == 2);
  CHECK(val("abs_ramanujan", 5, 5) == 4);
  CHECK(val("abs_ramanujan", 2, 1) == 1);   // |mu(2)|
  CHECK(val("abs_ramanujan", 4, 1) == 0);   // mu(4) = 0
  CHECK(val("abs_ramanujan", 4, 2) == 2);   // |mu(2) phi(4)/phi(2)|
  CHECK(val("abs_ramanujan", 9, 3) == 3);   // |mu(3) phi(9)/phi(3)|
  CHECK(val("abs_ramanujan", 4, 4) == 2);   // phi(4)
  CHECK(val("abs_ramanujan", 6, 4) == 1);
}

TEST_CASE("f1 and f2 filter by squarefree gcd / lcm") {
  CHECK(val("f1", 4, 6) == 2);
  CHECK(val("f1", 4, 4) == 0);    // gcd 4 not squarefree
  CHECK(val("f1", 12, 18) == 6);
  CHECK(val("f1", 8, 4) == 0);
  CHECK(val("f2", 2, 3) == 1);
  CHECK(val("f2", 2, 2) == 2);
  CHECK(val("f2", 4, 6) == 0);    // lcm 12 not squarefree
  CHECK(val("f2", 6, 10) == 2);   // lcm 30 squarefree, gcd 2
  CHECK(val("f2", 4, 1) == 0);
}

TEST_CASE("f2 never factorizes the lcm itself") {
  // lcm(9, 8) = 72 exceeds this sieve bound; squarefreeness is decided from
  // the arguments alone
  auto small = std::make_shared<const FactorSieve>(9);
  Builtin b = make_builtin("f2", 1, small);
  CHECK(b.fn.at(9, 8) == 0);
  CHECK(b.fn.at(6, 7) == 1);  // lcm 42 squarefree, gcd 1
}

TEST_CASE("phi_ratio and its divisor sum A") {
  CHECK(rval("phi_ratio", 1, 1) == 1.0);
  CHECK(rval("phi_ratio", 2, 4) == doctest::Approx(0.5));
  CHECK(rval("phi_ratio", 6, 10) == doctest::Approx(4.0 / 15.0));
  CHECK(rval("A", 1, 1) == doctest::Approx(1.0));
  CHECK(rval("A", 2, 2) == doctest::Approx(2.5));
}

TEST_CASE("s and c divisor sums") {
  CHECK(val("s", 1, 1) == 1);
  CHECK(val("s", 2, 2) == 5);
  CHECK(val("s", 4, 2) == 8);
  CHECK(val("c", 2, 2) == 4);
  CHECK(val("c", 4, 4) == 10);
}

TEST_CASE("tau_k and mu_k at points") {
  CHECK(val("tau_k", 4, 1, 2) == 3);
  CHECK(val("tau_k", 12, 1, 2) == 6);
  CHECK(val("tau_k", 4, 1, 3) == 6);
  CHECK(val("tau_k", 1, 1, 7) == 1);
  CHECK(val("mu_k", 2, 3, 1) == 1);    // mu(2) mu(3)
  CHECK(val("mu_k", 2, 1, 2) == -2);   // -C(2,1)
  CHECK(val("mu_k", 4, 1, 2) == 1);    // C(2,2)
  CHECK(val("mu_k", 8, 1, 2) == 0);    // exponent past k
}

TEST_CASE("tilde families specialize correctly at k = 1") {
  for (u64 n1 : {1ull, 4ull, 6ull, 9ull})
    for (u64 n2 : {1ull, 4ull, 6ull, 9ull})
      CHECK(val("tilde_tau_k", n1, n2, 1) == val("gcd", n1, n2));
  CHECK(val("tilde_mu_k", 4, 4, 1) == -2);  // 2 - 2p at p = 2
  CHECK(val("tilde_mu_k", 2, 2, 1) == 0);   // 2 - p at p = 2
  CHECK(val("tilde_mu_k", 2, 4, 1) == 1);   // p - 1
  CHECK(val("tilde_mu_k", 6, 6, 1) == 0);   // (2-2)(2-3)
}

TEST_CASE("tilde_tau_2 equals the gcd divisor sum s") {
  for (u64 n1 = 1; n1 <= 30; ++n1)
    for (u64 n2 = 1; n2 <= 30; ++n2)
      CHECK(val("tilde_tau_k", n1, n2, 2) == val("s", n1, n2));
}

TEST_CASE("parse_builtin handles the name:k surface syntax") {
  CHECK(parse_builtin("tau_k:3", sieve()).k == 3);
  CHECK(parse_builtin("tau_k", sieve()).k == 1);
  CHECK(parse_builtin("gcd", sieve()).k == 1);
  CHECK_THROWS_AS(parse_builtin("gcd:2", sieve()), unknown_name);
  CHECK_THROWS_AS(parse_builtin("tau_k:0", sieve()), unknown_name);
  CHECK_THROWS_AS(parse_builtin("tau_k:x", sieve()), unknown_name);
  CHECK_THROWS_AS(parse_builtin("tau_k:2x", sieve()), unknown_name);
  CHECK_THROWS_AS(parse_builtin("nosuch", sieve()), unknown_name);
  CHECK_THROWS_AS(make_builtin("nosuch", 1, sieve()), unknown_name);
}

TEST_CASE("every builtin is 1 at (1,1)") {
  for (const auto& name : builtin_names()) {
    Builtin b = make_builtin(name, 2, sieve());
    if (b.fn.integer_valued)
      CHECK(b.fn.at(1, 1) == 1);
    else
      CHECK(b.fn.at_real(1, 1) == 1.0);
    CHECK(b.spec.local_real(2, 0, 0) == 1.0);
  }
}
