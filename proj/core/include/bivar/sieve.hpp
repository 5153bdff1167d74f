#pragma once

// Smallest-prime-factor sieve and the one-variable tables built on it.
// spf[n] is the least prime dividing n, so factorization is O(log n) and the
// sieve bound only needs to cover max(x), never x^2.

#include <bivar/errors.hpp>
#include <bivar/int128.hpp>

#include <utility>
#include <vector>

namespace bivar {

struct Factorization {
  // (prime, exponent) pairs, primes strictly increasing, exponents >= 1.
  std::vector<std::pair<u64, u32>> pairs;
};

class FactorSieve {
 public:
  // Default cap keeps the spf table around 1 GiB; raise deliberately if needed.
  static constexpr u64 kDefaultMaxBound = u64(1) << 28;

  explicit FactorSieve(u64 bound, u64 max_bound = kDefaultMaxBound);

  u64 bound() const { return bound_; }
  u32 spf(u64 n) const;                      // n in [2, bound]
  Factorization factorize(u64 n) const;      // n in [1, bound]; factorize(1) = {}
  std::vector<u64> divisors(u64 n) const;    // all divisors, ascending
  const std::vector<u32>& primes() const { return primes_; }

 private:
  u64 bound_;
  std::vector<u32> spf_;
  std::vector<u32> primes_;
};

// Plain prime list without the spf table (cheap for Euler products).
std::vector<u64> primes_up_to(u64 n);

// One-variable value tables over [0, bound] (index 0 unused, tables are
// 1-based like the functions they tabulate). Used by the sum accelerations.
std::vector<i64> table_one(u64 bound);       // F(d) = 1
std::vector<i64> table_id(u64 bound);        // F(d) = d
std::vector<i64> table_delta1(u64 bound);    // F(d) = [d = 1]
std::vector<i64> table_sigma(const FactorSieve& s);
std::vector<i64> table_phi(const FactorSieve& s);
std::vector<i64> table_id_musq(const FactorSieve& s);  // F(d) = d * mu(d)^2

// In-place divisor Mobius transform: F <- F * mu. Inverse of the ascending
// zeta pass, so i runs descending per prime (F[i] must be unread when i*p is
// updated).
void mobius_transform(std::vector<i64>& f, const std::vector<u32>& primes);

}  // namespace bivar
