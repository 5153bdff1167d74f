#include <bivar/sieve.hpp>

#include <algorithm>

namespace bivar {

FactorSieve::FactorSieve(u64 bound, u64 max_bound) : bound_(bound) {
  if (bound < 1) throw capacity_error("FactorSieve: bound must be >= 1");
  if (bound > max_bound)
    throw capacity_error("FactorSieve: bound " + std::to_string(bound) +
                         " exceeds cap " + std::to_string(max_bound));
  spf_.assign(bound_ + 1, 0);
  // Linear sieve: each composite is struck exactly once, by its least prime
  // factor, so construction is O(bound).
  for (u64 n = 2; n <= bound_; ++n) {
    if (spf_[n] == 0) {
      spf_[n] = static_cast<u32>(n);
      primes_.push_back(static_cast<u32>(n));
    }
    for (u32 p : primes_) {
      if (p > spf_[n] || n * p > bound_) break;
      spf_[n * p] = p;
    }
  }
}

u32 FactorSieve::spf(u64 n) const {
  if (n < 2 || n > bound_) throw capacity_error("spf: n out of range");
  return spf_[n];
}

Factorization FactorSieve::factorize(u64 n) const {
  if (n < 1 || n > bound_) throw capacity_error("factorize: n out of range");
  Factorization f;
  while (n > 1) {
    u64 p = spf_[n];
    u32 e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.pairs.emplace_back(p, e);
  }
  return f;
}

std::vector<u64> FactorSieve::divisors(u64 n) const {
  Factorization f = factorize(n);
  std::vector<u64> divs{1};
  for (const auto& [p, e] : f.pairs) {
    size_t base = divs.size();
    u64 pe = 1;
    for (u32 j = 1; j <= e; ++j) {
      pe *= p;
      for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> primes;
  if (n < 2) return primes;
  std::vector<bool> comp(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (!comp[i]) {
      primes.push_back(i);
      for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
  }
  return primes;
}

std::vector<i64> table_one(u64 bound) {
  std::vector<i64> t(bound + 1, 1);
  t[0] = 0;
  return t;
}

std::vector<i64> table_id(u64 bound) {
  std::vector<i64> t(bound + 1);
  for (u64 d = 0; d <= bound; ++d) t[d] = static_cast<i64>(d);
  return t;
}

std::vector<i64> table_delta1(u64 bound) {
  std::vector<i64> t(bound + 1, 0);
  if (bound >= 1) t[1] = 1;
  return t;
}

std::vector<i64> table_sigma(const FactorSieve& s) {
  u64 bound = s.bound();
  std::vector<i64> t(bound + 1, 0);
  t[1] = 1;
  for (u64 n = 2; n <= bound; ++n) {
    // Peel the spf-power: sigma(p^e * m) = sigma(p^e) * sigma(m), m coprime.
    u64 p = s.spf(n), m = n, pe = 1;
    while (m % p == 0) {
      m /= p;
      pe *= p;
    }
    i64 sig_pe = static_cast<i64>((pe * p - 1) / (p - 1));
    t[n] = sig_pe * t[m];
  }
  return t;
}

std::vector<i64> table_phi(const FactorSieve& s) {
  u64 bound = s.bound();
  std::vector<i64> t(bound + 1, 0);
  t[1] = 1;
  for (u64 n = 2; n <= bound; ++n) {
    u64 p = s.spf(n), m = n, pe = 1;
    while (m % p == 0) {
      m /= p;
      pe *= p;
    }
    t[n] = static_cast<i64>(pe - pe / p) * t[m];
  }
  return t;
}

std::vector<i64> table_id_musq(const FactorSieve& s) {
  u64 bound = s.bound();
  std::vector<i64> t(bound + 1, 0);
  t[1] = 1;
  for (u64 n = 2; n <= bound; ++n) {
    u64 p = s.spf(n), m = n / p;
    t[n] = (m % p == 0) ? 0 : static_cast<i64>(p) * t[m];
  }
  return t;
}

void mobius_transform(std::vector<i64>& f, const std::vector<u32>& primes) {
  u64 bound = f.size() - 1;
  for (u32 p : primes) {
    if (p > bound) break;
    // Descending i: f[i] must still hold the untransformed value when f[i*p]
    // is updated, which the ascending zeta pass would have clobbered.
    for (u64 i = bound / p; i >= 1; --i) f[i * p] -= f[i];
  }
}

}  // namespace bivar
