#pragma once

// Arithmetic functions of two positive-integer variables. A function comes in
// two shapes: a general evaluator (Fn2) and, when it is multiplicative, a
// prime-power table (PrimePowerSpec) with local(p, 0, 0) = 1. The two shapes
// are kept independent so the test suite can cross-check them.

#include <bivar/int128.hpp>
#include <bivar/sieve.hpp>

#include <functional>
#include <string>

namespace bivar {

struct Fn2 {
  std::string name;
  bool integer_valued = true;
  // eval_int is null iff !integer_valued; eval_real is always callable.
  std::function<i128(u64, u64)> eval_int;
  std::function<double(u64, u64)> eval_real;

  i128 at(u64 n1, u64 n2) const { return eval_int(n1, n2); }
  double at_real(u64 n1, u64 n2) const { return eval_real(n1, n2); }
};

struct PrimePowerSpec {
  std::string name;
  bool integer_valued = true;
  // local value at (p^a, p^b); local(p, 0, 0) = 1.
  std::function<i128(u64, u32, u32)> local_int;
  std::function<double(u64, u32, u32)> local_real;
};

// f(n1, n2) = prod over primes p | n1*n2 of local(p, v_p(n1), v_p(n2)).
// n1 and n2 are factorized separately and the prime lists merged.
i128 eval_multiplicative(const PrimePowerSpec& spec, const FactorSieve& sieve,
                         u64 n1, u64 n2);
double eval_multiplicative_real(const PrimePowerSpec& spec, const FactorSieve& sieve,
                                u64 n1, u64 n2);

// Derives a general Fn2 from a spec (evaluation through the sieve). This is
// the *dependent* direction, used where only a spec is natural.
Fn2 fn2_from_spec(const PrimePowerSpec& spec, const FactorSieve& sieve);

}  // namespace bivar
