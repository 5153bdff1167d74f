#pragma once

// Registry of the concrete two-variable arithmetic functions this library
// studies. Every builtin is multiplicative, so each entry carries both a
// general evaluator (from the definition: divisor sums, gcd/lcm, totients)
// and a PrimePowerSpec (closed local values or local convolutions).

#include <bivar/fn2.hpp>

#include <memory>
#include <string>
#include <vector>

namespace bivar {

struct Builtin {
  Fn2 fn;
  PrimePowerSpec spec;
  bool parameterized = false;  // true for k_omega, tau_k, mu_k, tilde_tau_k, tilde_mu_k
  int k = 1;
};

// Names: one, delta, gcd, lcm, sigma_gcd, phi_gcd, k_omega, abs_ramanujan,
// f1, f2, phi_ratio, s, c, A, tau_k, mu_k, tilde_tau_k, tilde_mu_k.
// k is ignored for non-parameterized entries. Throws unknown_name with the
// full name list otherwise. The sieve backs factorization-based evaluation;
// general evaluators throw out-of-range beyond its bound.
Builtin make_builtin(const std::string& name, int k,
                     std::shared_ptr<const FactorSieve> sieve);

const std::vector<std::string>& builtin_names();
bool builtin_is_parameterized(const std::string& name);
bool builtin_is_integer_valued(const std::string& name);

// "name" or "name:k" for parameterized entries (CLI surface syntax).
Builtin parse_builtin(const std::string& name_with_k,
                      std::shared_ptr<const FactorSieve> sieve);

}  // namespace bivar
