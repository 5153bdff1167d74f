#include <bivar/fn2.hpp>

namespace bivar {

namespace {

// Merge the two factorizations into (p, a, b) triples, a = v_p(n1),
// b = v_p(n2), keeping primes strictly increasing.
template <typename Visit>
void merged_exponents(const Factorization& f1, const Factorization& f2,
                      Visit&& visit) {
  size_t i = 0, j = 0;
  while (i < f1.pairs.size() || j < f2.pairs.size()) {
    if (j == f2.pairs.size() ||
        (i < f1.pairs.size() && f1.pairs[i].first < f2.pairs[j].first)) {
      visit(f1.pairs[i].first, f1.pairs[i].second, u32(0));
      ++i;
    } else if (i == f1.pairs.size() ||
               f2.pairs[j].first < f1.pairs[i].first) {
      visit(f2.pairs[j].first, u32(0), f2.pairs[j].second);
      ++j;
    } else {
      visit(f1.pairs[i].first, f1.pairs[i].second, f2.pairs[j].second);
      ++i;
      ++j;
    }
  }
}

}  // namespace

i128 eval_multiplicative(const PrimePowerSpec& spec, const FactorSieve& sieve,
                         u64 n1, u64 n2) {
  Factorization f1 = sieve.factorize(n1);
  Factorization f2 = sieve.factorize(n2);
  i128 v = 1;
  merged_exponents(f1, f2, [&](u64 p, u32 a, u32 b) {
    v = checked_mul(v, spec.local_int(p, a, b));
  });
  return v;
}

double eval_multiplicative_real(const PrimePowerSpec& spec,
                                const FactorSieve& sieve, u64 n1, u64 n2) {
  Factorization f1 = sieve.factorize(n1);
  Factorization f2 = sieve.factorize(n2);
  double v = 1.0;
  merged_exponents(f1, f2, [&](u64 p, u32 a, u32 b) {
    v *= spec.local_real(p, a, b);
  });
  return v;
}

Fn2 fn2_from_spec(const PrimePowerSpec& spec, const FactorSieve& sieve) {
  Fn2 f;
  f.name = spec.name;
  f.integer_valued = spec.integer_valued;
  if (spec.integer_valued) {
    f.eval_int = [&spec, &sieve](u64 n1, u64 n2) {
      return eval_multiplicative(spec, sieve, n1, n2);
    };
    f.eval_real = [&spec, &sieve](u64 n1, u64 n2) {
      return static_cast<double>(eval_multiplicative(spec, sieve, n1, n2));
    };
  } else {
    f.eval_real = [&spec, &sieve](u64 n1, u64 n2) {
      return eval_multiplicative_real(spec, sieve, n1, n2);
    };
  }
  return f;
}

}  // namespace bivar
