#include <bivar/convolution.hpp>

#include <bivar/errors.hpp>

#include <algorithm>

namespace bivar {

i128 binomial(u32 n, u32 k) {
  if (n > 128) throw capacity_error("binomial: n > 128 not supported exactly");
  if (k > n) return 0;
  // Pascal row build; row n fits easily in i128 (C(128,64) < 2^125).
  std::vector<i128> row(n + 1, 0);
  row[0] = 1;
  for (u32 i = 1; i <= n; ++i)
    for (u32 j = std::min(i, k); j >= 1; --j) row[j] = checked_add(row[j], row[j - 1]);
  return row[k];
}

LocalTable::LocalTable(u64 p, u32 numax)
    : p_(p), numax_(numax), v_(std::size_t(numax + 1) * (numax + 1), 0) {}

LocalTable LocalTable::from_spec(const PrimePowerSpec& spec, u64 p, u32 numax) {
  if (!spec.integer_valued)
    throw std::invalid_argument("LocalTable::from_spec: integer-valued spec required");
  LocalTable t(p, numax);
  for (u32 a = 0; a <= numax; ++a)
    for (u32 b = 0; b <= numax; ++b) t.set(a, b, spec.local_int(p, a, b));
  return t;
}

i128 convolve_local_at(const LocalTable& F, const LocalTable& G, u32 a, u32 b) {
  if (F.p() != G.p())
    throw std::invalid_argument("convolve_local_at: mismatched primes");
  if (a > F.numax() || b > F.numax() || a > G.numax() || b > G.numax())
    throw capacity_error("convolve_local_at: exponents beyond table range");
  i128 acc = 0;
  for (u32 i = 0; i <= a; ++i)
    for (u32 j = 0; j <= b; ++j)
      acc = checked_add(acc, checked_mul(F.at(i, j), G.at(a - i, b - j)));
  return acc;
}

LocalTable convolve_local(const LocalTable& F, const LocalTable& G) {
  if (F.p() != G.p()) throw std::invalid_argument("convolve_local: mismatched primes");
  u32 numax = std::min(F.numax(), G.numax());
  LocalTable out(F.p(), numax);
  for (u32 a = 0; a <= numax; ++a)
    for (u32 b = 0; b <= numax; ++b) out.set(a, b, convolve_local_at(F, G, a, b));
  return out;
}

LocalTable inverse_local(const LocalTable& F) {
  i128 lead = F.at(0, 0);
  if (lead == 0) throw not_invertible("inverse_local: F(p^0,p^0) = 0");
  if (lead != 1 && lead != -1)
    throw not_invertible(
        "inverse_local: exact integer inversion needs F(p^0,p^0) = +-1, got " +
        to_string(lead));
  u32 numax = F.numax();
  LocalTable G(F.p(), numax);
  G.set(0, 0, lead);  // 1/lead = lead for +-1
  for (u32 a = 0; a <= numax; ++a)
    for (u32 b = 0; b <= numax; ++b) {
      if (a == 0 && b == 0) continue;
      i128 acc = 0;  // sum over (i,j) < (a,b) componentwise, excluding (a,b)
      for (u32 i = 0; i <= a; ++i)
        for (u32 j = 0; j <= b; ++j) {
          if (i == a && j == b) continue;
          acc = checked_add(acc, checked_mul(G.at(i, j), F.at(a - i, b - j)));
        }
      G.set(a, b, checked_mul(-lead, acc));
    }
  return G;
}

i128 tau_k_local(u32 k, u32 a, u32 b) {
  if (k < 1) throw std::invalid_argument("tau_k_local: k >= 1 required");
  // one^{*k} counts ordered k-factorizations per coordinate independently.
  return checked_mul(binomial(a + k - 1, k - 1), binomial(b + k - 1, k - 1));
}

i128 mu_k_local(u32 k, u32 a, u32 b) {
  if (k < 1) throw std::invalid_argument("mu_k_local: k >= 1 required");
  if (a > k || b > k) return 0;
  i128 v = checked_mul(binomial(k, a), binomial(k, b));
  return ((a + b) % 2 == 0) ? v : -v;
}

i128 tilde_mu_local(u64 p, u32 a, u32 b) {
  if (a == 0 && b == 0) return 1;
  if (a + b == 1) return -1;
  if (a == 1 && b == 1) return 2 - i128(p);
  u32 lo = std::min(a, b), hi = std::max(a, b);
  if (lo >= 1 && hi == lo + 1) return i128(p) - 1;
  if (a == b && a >= 2) return 2 - 2 * i128(p);
  return 0;
}

i128 tilde_tau_k_local(u32 k, u64 p, u32 a, u32 b) {
  if (k < 1) throw std::invalid_argument("tilde_tau_k_local: k >= 1 required");
  u32 m = std::min(a, b);
  if (k == 1) return ipow(i128(p), m);
  i128 acc = 0;  // (tau_{k-1} * gcd)(p^a, p^b)
  for (u32 i = 0; i <= a; ++i)
    for (u32 j = 0; j <= b; ++j)
      acc = checked_add(acc, checked_mul(tau_k_local(k - 1, i, j),
                                         ipow(i128(p), std::min(a - i, b - j))));
  return acc;
}

i128 tilde_mu_k_local(u32 k, u64 p, u32 a, u32 b) {
  if (k < 1) throw std::invalid_argument("tilde_mu_k_local: k >= 1 required");
  if (k == 1) return tilde_mu_local(p, a, b);
  i128 acc = 0;  // (mu_{k-1} * tilde_mu)(p^a, p^b); mu_{k-1} vanishes past k-1
  for (u32 i = 0; i <= std::min(a, k - 1); ++i)
    for (u32 j = 0; j <= std::min(b, k - 1); ++j)
      acc = checked_add(acc, checked_mul(mu_k_local(k - 1, i, j),
                                         tilde_mu_local(p, a - i, b - j)));
  return acc;
}

DenseTable2::DenseTable2(u32 bound)
    : bound_(bound), v_(std::size_t(bound) * bound, 0) {
  if (bound < 1) throw capacity_error("DenseTable2: bound >= 1 required");
}

DenseTable2 DenseTable2::delta(u32 bound) {
  DenseTable2 t(bound);
  t.set(1, 1, 1);
  return t;
}

DenseTable2 DenseTable2::ones(u32 bound) {
  DenseTable2 t(bound);
  for (u32 i = 1; i <= bound; ++i)
    for (u32 j = 1; j <= bound; ++j) t.set(i, j, 1);
  return t;
}

DenseTable2 DenseTable2::from_fn(const Fn2& f, u32 bound) {
  if (!f.integer_valued)
    throw std::invalid_argument("DenseTable2::from_fn: integer-valued Fn2 required");
  DenseTable2 t(bound);
  for (u32 i = 1; i <= bound; ++i)
    for (u32 j = 1; j <= bound; ++j) t.set(i, j, f.at(i, j));
  return t;
}

i128 convolve_at(const Fn2& f, const Fn2& g, const FactorSieve& sieve, u64 n1,
                 u64 n2) {
  if (!f.integer_valued || !g.integer_valued)
    throw std::invalid_argument("convolve_at: integer-valued operands required");
  i128 acc = 0;
  for (u64 d1 : sieve.divisors(n1))
    for (u64 d2 : sieve.divisors(n2))
      acc = checked_add(acc, checked_mul(f.at(d1, d2), g.at(n1 / d1, n2 / d2)));
  return acc;
}

double convolve_at_real(const Fn2& f, const Fn2& g, const FactorSieve& sieve,
                        u64 n1, u64 n2) {
  double acc = 0;
  for (u64 d1 : sieve.divisors(n1))
    for (u64 d2 : sieve.divisors(n2))
      acc += f.at_real(d1, d2) * g.at_real(n1 / d1, n2 / d2);
  return acc;
}

DenseTable2 convolve_table(const DenseTable2& f, const DenseTable2& g) {
  if (f.bound() != g.bound())
    throw std::invalid_argument("convolve_table: mismatched bounds");
  u32 bound = f.bound();
  DenseTable2 out(bound);
  // Multiple enumeration: for every (d1,d2) and every multiple (d1 e1, d2 e2),
  // accumulate f(d1,d2) g(e1,e2). No factorization needed.
  for (u32 d1 = 1; d1 <= bound; ++d1)
    for (u32 d2 = 1; d2 <= bound; ++d2) {
      i128 fv = f.at(d1, d2);
      if (fv == 0) continue;
      for (u32 n1 = d1; n1 <= bound; n1 += d1)
        for (u32 n2 = d2; n2 <= bound; n2 += d2)
          out.set(n1, n2,
                  checked_add(out.at(n1, n2),
                              checked_mul(fv, g.at(n1 / d1, n2 / d2))));
    }
  return out;
}

DenseTable2 inverse_table(const DenseTable2& f) {
  i128 lead = f.at(1, 1);
  if (lead == 0) throw not_invertible("inverse_table: f(1,1) = 0");
  if (lead != 1 && lead != -1)
    throw not_invertible(
        "inverse_table: exact integer inversion needs f(1,1) = +-1, got " +
        to_string(lead) + "; use inverse_table_rat");
  u32 bound = f.bound();
  DenseTable2 g(bound);
  g.set(1, 1, lead);
  // Row-major recursion: g(n1,n2) determined by strictly smaller divisor pairs.
  for (u32 n1 = 1; n1 <= bound; ++n1)
    for (u32 n2 = 1; n2 <= bound; ++n2) {
      if (n1 == 1 && n2 == 1) continue;
      i128 acc = 0;
      for (u32 d1 = 1; d1 <= n1; ++d1) {
        if (n1 % d1) continue;
        for (u32 d2 = 1; d2 <= n2; ++d2) {
          if (n2 % d2) continue;
          if (d1 == n1 && d2 == n2) continue;
          acc = checked_add(acc, checked_mul(g.at(d1, d2), f.at(n1 / d1, n2 / d2)));
        }
      }
      g.set(n1, n2, checked_mul(-lead, acc));
    }
  return g;
}

RatTable2 inverse_table_rat(const DenseTable2& f) {
  Rat lead(f.at(1, 1));
  if (lead.num == 0) throw not_invertible("inverse_table_rat: f(1,1) = 0");
  u32 bound = f.bound();
  RatTable2 g{bound, std::vector<Rat>(std::size_t(bound) * bound, Rat(0))};
  auto set = [&](u32 n1, u32 n2, const Rat& v) {
    g.v[std::size_t(n1 - 1) * bound + (n2 - 1)] = v;
  };
  set(1, 1, Rat(1) / lead);
  for (u32 n1 = 1; n1 <= bound; ++n1)
    for (u32 n2 = 1; n2 <= bound; ++n2) {
      if (n1 == 1 && n2 == 1) continue;
      Rat acc(0);
      for (u32 d1 = 1; d1 <= n1; ++d1) {
        if (n1 % d1) continue;
        for (u32 d2 = 1; d2 <= n2; ++d2) {
          if (n2 % d2) continue;
          if (d1 == n1 && d2 == n2) continue;
          acc = acc + g.at(d1, d2) * Rat(f.at(n1 / d1, n2 / d2));
        }
      }
      set(n1, n2, -acc / lead);
    }
  return g;
}

}  // namespace bivar
