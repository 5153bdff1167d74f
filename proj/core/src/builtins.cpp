#include <bivar/builtins.hpp>

#include <bivar/convolution.hpp>
#include <bivar/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bivar {

namespace {

// Scalar helpers from a factorization; these back the *general* evaluators,
// which must stay independent of the PrimePowerSpec closed forms.
i64 phi_of(const FactorSieve& s, u64 n) {
  i64 v = 1;
  for (const auto& [p, e] : s.factorize(n).pairs) {
    i64 pe = 1;
    for (u32 j = 1; j < e; ++j) pe *= i64(p);
    v *= pe * (i64(p) - 1);
  }
  return v;
}

i64 sigma_of(const FactorSieve& s, u64 n) {
  i64 v = 1;
  for (const auto& [p, e] : s.factorize(n).pairs) {
    i64 term = 1, pe = 1;
    for (u32 j = 1; j <= e; ++j) {
      pe *= i64(p);
      term += pe;
    }
    v *= term;
  }
  return v;
}

int mu_of(const FactorSieve& s, u64 n) {
  int sign = 1;
  for (const auto& [p, e] : s.factorize(n).pairs) {
    if (e >= 2) return 0;
    sign = -sign;
  }
  return sign;
}

bool squarefree(const FactorSieve& s, u64 n) {
  for (const auto& [p, e] : s.factorize(n).pairs)
    if (e >= 2) return false;
  return true;
}

u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

// tau_k by its defining recursion tau_k = tau_{k-1} * one (no binomials).
i128 tau_k_eval(const FactorSieve& s, int k, u64 n1, u64 n2) {
  if (k == 1) return 1;
  i128 acc = 0;
  for (u64 d1 : s.divisors(n1))
    for (u64 d2 : s.divisors(n2))
      acc = checked_add(acc, tau_k_eval(s, k - 1, d1, d2));
  return acc;
}

// mu_k = mu_1^{*k} with mu_1(n1,n2) = mu(n1) mu(n2) (inverse of one).
i128 mu_k_eval(const FactorSieve& s, int k, u64 n1, u64 n2) {
  if (k == 1) return i128(mu_of(s, n1)) * mu_of(s, n2);
  i128 acc = 0;
  for (u64 d1 : s.divisors(n1))
    for (u64 d2 : s.divisors(n2)) {
      i128 tail = i128(mu_of(s, n1 / d1)) * mu_of(s, n2 / d2);
      if (tail != 0)
        acc = checked_add(acc, checked_mul(mu_k_eval(s, k - 1, d1, d2), tail));
    }
  return acc;
}

Fn2 int_fn(std::string name, std::function<i128(u64, u64)> f) {
  Fn2 fn;
  fn.name = std::move(name);
  fn.integer_valued = true;
  fn.eval_int = f;
  fn.eval_real = [f](u64 n1, u64 n2) { return static_cast<double>(f(n1, n2)); };
  return fn;
}

Fn2 real_fn(std::string name, std::function<double(u64, u64)> f) {
  Fn2 fn;
  fn.name = std::move(name);
  fn.integer_valued = false;
  fn.eval_real = std::move(f);
  return fn;
}

PrimePowerSpec int_spec(std::string name, std::function<i128(u64, u32, u32)> loc) {
  PrimePowerSpec spec;
  spec.name = std::move(name);
  spec.integer_valued = true;
  spec.local_int = loc;
  spec.local_real = [loc](u64 p, u32 a, u32 b) {
    return static_cast<double>(loc(p, a, b));
  };
  return spec;
}

PrimePowerSpec real_spec(std::string name, std::function<double(u64, u32, u32)> loc) {
  PrimePowerSpec spec;
  spec.name = std::move(name);
  spec.integer_valued = false;
  spec.local_real = std::move(loc);
  return spec;
}

i128 sigma_pp(u64 p, u32 e) {  // sigma(p^e)
  i128 v = 1, pe = 1;
  for (u32 j = 1; j <= e; ++j) {
    pe = checked_mul(pe, i128(p));
    v = checked_add(v, pe);
  }
  return v;
}

i128 phi_pp(u64 p, u32 e) {  // phi(p^e)
  if (e == 0) return 1;
  return checked_mul(ipow(i128(p), e - 1), i128(p) - 1);
}

double phi_ratio_local(u64 p, u32 a, u32 b) {
  // phi(p^a) phi(p^b) / p^max(a,b)
  double pd = static_cast<double>(p);
  return static_cast<double>(phi_pp(p, a)) * static_cast<double>(phi_pp(p, b)) /
         std::pow(pd, double(std::max(a, b)));
}

}  // namespace

Builtin make_builtin(const std::string& name, int k,
                     std::shared_ptr<const FactorSieve> sieve) {
  if (!sieve) throw std::invalid_argument("make_builtin: null sieve");
  const FactorSieve* sv = sieve.get();  // lambdas keep the shared_ptr alive

  Builtin b;
  b.k = k;

  if (name == "one") {
    b.fn = int_fn(name, [](u64, u64) -> i128 { return 1; });
    b.spec = int_spec(name, [](u64, u32, u32) -> i128 { return 1; });
  } else if (name == "delta") {
    b.fn = int_fn(name, [](u64 n1, u64 n2) -> i128 { return n1 == 1 && n2 == 1; });
    b.spec = int_spec(name, [](u64, u32 a, u32 bb) -> i128 { return a == 0 && bb == 0; });
  } else if (name == "gcd") {
    b.fn = int_fn(name, [](u64 n1, u64 n2) -> i128 { return std::gcd(n1, n2); });
    b.spec = int_spec(name, [](u64 p, u32 a, u32 bb) -> i128 {
      return ipow(i128(p), std::min(a, bb));
    });
  } else if (name == "lcm") {
    b.fn = int_fn(name, [](u64 n1, u64 n2) -> i128 {
      return checked_mul(i128(n1 / std::gcd(n1, n2)), i128(n2));
    });
    b.spec = int_spec(name, [](u64 p, u32 a, u32 bb) -> i128 {
      return ipow(i128(p), std::max(a, bb));
    });
  } else if (name == "sigma_gcd") {
    b.fn = int_fn(name, [sieve, sv](u64 n1, u64 n2) -> i128 {
      return sigma_of(*sv, std::gcd(n1, n2));
    });
    b.spec = int_spec(name, [](u64 p, u32 a, u32 bb) -> i128 {
      return sigma_pp(p, std::min(a, bb));
    });
  } else if (name == "phi_gcd") {
    b.fn = int_fn(name, [sieve, sv](u64 n1, u64 n2) -> i128 {
      return phi_of(*sv, std::gcd(n1, n2));
    });
    b.spec = int_spec(name, [](u64 p, u32 a, u32 bb) -> i128 {
      return phi_pp(p, std::min(a, bb));
    });
  } else if (name == "k_omega") {
    if (k < 1) throw std::invalid_argument("k_omega: k must be >= 1");
    b.parameterized = true;
    b.fn = int_fn(name, [sieve, sv, k](u64 n1, u64 n2) -> i128 {
      // omega(n1 n2) = number of distinct primes dividing either argument.
      auto f1 = sv->factorize(n1), f2 = sv->factorize(n2);
      std::size_t i = 0, j = 0;
      u32 omega = 0;
      while (i < f1.pairs.size() || j < f2.pairs.size()) {
        u64 p1 = i < f1.pairs.size() ? f1.pairs[i].first : ~u64(0);
        u64 p2 = j < f2.pairs.size() ? f2.pairs[j].first : ~u64(0);
        if (p1 <= p2) ++i;
        if (p2 <= p1) ++j;
        ++omega;
      }
      return ipow(i128(k), omega);
    });
    b.spec = int_spec(name, [k](u64, u32 a, u32 bb) -> i128 {
      return (a + bb >= 1) ? i128(k) : 1;
    });
  } else if (name == "abs_ramanujan") {
    // |c_q(n)|, modulus first: q = n1, n = n2.
    b.fn = int_fn(name, [sieve, sv](u64 q, u64 n) -> i128 {
      u64 g = std::gcd(q, n), m = q / g;
      int mu_m = mu_of(*sv, m);
      if (mu_m == 0) return 0;
      return phi_of(*sv, q) / phi_of(*sv, m);  // phi(m) | phi(q) since m | q
    });
    b.spec = int_spec(name, [](u64 p, u32 a, u32 bb) -> i128 {
      if (a == 0) return 1;
      if (bb >= a) return phi_pp(p, a);
      if (bb == a - 1) return ipow(i128(p), a - 1);
      return 0;
    });
  } else if (name == "f1") {
    b.fn = int_fn(name, [sieve, sv](u64 n1, u64 n2) -> i128 {
      u64 g = std::gcd(n1, n2);
      return squarefree(*sv, g) ? i128(g) : 0;
    });
    b.spec = int_spec(name, [](u64 p, u32 a, u32 bb) -> i128 {
      u32 m = std::min(a, bb);
      return m >= 2 ? 0 : ipow(i128(p), m);
    });
  } else if (name == "f2") {
    b.fn = int_fn(name, [sieve, sv](u64 n1, u64 n2) -> i128 {
      // lcm(n1,n2) is squarefree iff both arguments are (and the lcm itself
      // may exceed the sieve bound, so do not factorize it).
      return squarefree(*sv, n1) && squarefree(*sv, n2)
                 ? i128(std::gcd(n1, n2))
                 : 0;
    });
    b.spec = int_spec(name, [](u64 p, u32 a, u32 bb) -> i128 {
      return std::max(a, bb) >= 2 ? 0 : ipow(i128(p), std::min(a, bb));
    });
  } else if (name == "phi_ratio") {
    b.fn = real_fn(name, [sieve, sv](u64 n1, u64 n2) {
      return double(phi_of(*sv, n1)) * double(phi_of(*sv, n2)) /
             double(lcm_u64(n1, n2));
    });
    b.spec = real_spec(name, phi_ratio_local);
  } else if (name == "s") {
    b.fn = int_fn(name, [sieve, sv](u64 n1, u64 n2) -> i128 {
      i128 acc = 0;
      for (u64 d1 : sv->divisors(n1))
        for (u64 d2 : sv->divisors(n2)) acc = checked_add(acc, std::gcd(d1, d2));
      return acc;
    });
    b.spec = int_spec(name, [](u64 p, u32 a, u32 bb) -> i128 {
      i128 acc = 0;
      for (u32 i = 0; i <= a; ++i)
        for (u32 j = 0; j <= bb; ++j)
          acc = checked_add(acc, ipow(i128(p), std::min(i, j)));
      return acc;
    });
  } else if (name == "c") {
    b.fn = int_fn(name, [sieve, sv](u64 n1, u64 n2) -> i128 {
      i128 acc = 0;
      for (u64 d1 : sv->divisors(n1))
        for (u64 d2 : sv->divisors(n2))
          acc = checked_add(acc, phi_of(*sv, std::gcd(d1, d2)));
      return acc;
    });
    b.spec = int_spec(name, [](u64 p, u32 a, u32 bb) -> i128 {
      i128 acc = 0;
      for (u32 i = 0; i <= a; ++i)
        for (u32 j = 0; j <= bb; ++j) acc = checked_add(acc, phi_pp(p, std::min(i, j)));
      return acc;
    });
  } else if (name == "A") {
    b.fn = real_fn(name, [sieve, sv](u64 n1, u64 n2) {
      double acc = 0;
      for (u64 d1 : sv->divisors(n1))
        for (u64 d2 : sv->divisors(n2))
          acc += double(phi_of(*sv, d1)) * double(phi_of(*sv, d2)) /
                 double(lcm_u64(d1, d2));
      return acc;
    });
    b.spec = real_spec(name, [](u64 p, u32 a, u32 bb) {
      double acc = 0;
      for (u32 i = 0; i <= a; ++i)
        for (u32 j = 0; j <= bb; ++j) acc += phi_ratio_local(p, i, j);
      return acc;
    });
  } else if (name == "tau_k") {
    if (k < 1) throw std::invalid_argument("tau_k: k must be >= 1");
    b.parameterized = true;
    b.fn = int_fn(name, [sieve, sv, k](u64 n1, u64 n2) -> i128 {
      return tau_k_eval(*sv, k, n1, n2);
    });
    b.spec = int_spec(name, [k](u64, u32 a, u32 bb) -> i128 {
      return tau_k_local(u32(k), a, bb);
    });
  } else if (name == "mu_k") {
    if (k < 1) throw std::invalid_argument("mu_k: k must be >= 1");
    b.parameterized = true;
    b.fn = int_fn(name, [sieve, sv, k](u64 n1, u64 n2) -> i128 {
      return mu_k_eval(*sv, k, n1, n2);
    });
    b.spec = int_spec(name, [k](u64, u32 a, u32 bb) -> i128 {
      return mu_k_local(u32(k), a, bb);
    });
  } else if (name == "tilde_tau_k") {
    if (k < 1) throw std::invalid_argument("tilde_tau_k: k must be >= 1");
    b.parameterized = true;
    b.fn = int_fn(name, [sieve, sv, k](u64 n1, u64 n2) -> i128 {
      if (k == 1) return std::gcd(n1, n2);
      i128 acc = 0;  // tau_{k-1} * gcd by divisor enumeration
      for (u64 d1 : sv->divisors(n1))
        for (u64 d2 : sv->divisors(n2))
          acc = checked_add(
              acc, checked_mul(tau_k_eval(*sv, k - 1, d1, d2),
                               i128(std::gcd(n1 / d1, n2 / d2))));
      return acc;
    });
    b.spec = int_spec(name, [k](u64 p, u32 a, u32 bb) -> i128 {
      return tilde_tau_k_local(u32(k), p, a, bb);
    });
  } else if (name == "tilde_mu_k") {
    if (k < 1) throw std::invalid_argument("tilde_mu_k: k must be >= 1");
    b.parameterized = true;
    b.fn = int_fn(name, [sieve, sv, k](u64 n1, u64 n2) -> i128 {
      return eval_multiplicative(
          int_spec("tilde_mu_k",
                   [k](u64 p, u32 a, u32 bb) -> i128 {
                     return tilde_mu_k_local(u32(k), p, a, bb);
                   }),
          *sv, n1, n2);
    });
    b.spec = int_spec(name, [k](u64 p, u32 a, u32 bb) -> i128 {
      return tilde_mu_k_local(u32(k), p, a, bb);
    });
  } else {
    std::string msg = "unknown builtin '" + name + "'; valid names:";
    for (const auto& n : builtin_names()) msg += " " + n;
    throw unknown_name(msg);
  }
  return b;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "one",     "delta",       "gcd",       "lcm",   "sigma_gcd", "phi_gcd",
      "k_omega", "abs_ramanujan", "f1",      "f2",    "phi_ratio", "s",
      "c",       "A",           "tau_k",     "mu_k",  "tilde_tau_k",
      "tilde_mu_k"};
  return names;
}

bool builtin_is_parameterized(const std::string& name) {
  return name == "k_omega" || name == "tau_k" || name == "mu_k" ||
         name == "tilde_tau_k" || name == "tilde_mu_k";
}

bool builtin_is_integer_valued(const std::string& name) {
  return !(name == "phi_ratio" || name == "A");
}

Builtin parse_builtin(const std::string& name_with_k,
                      std::shared_ptr<const FactorSieve> sieve) {
  auto colon = name_with_k.find(':');
  std::string name = name_with_k.substr(0, colon);
  int k = 1;
  if (colon != std::string::npos) {
    if (!builtin_is_parameterized(name))
      throw unknown_name("'" + name + "' takes no k parameter");
    try {
      std::size_t used = 0;
      k = std::stoi(name_with_k.substr(colon + 1), &used);
      if (used != name_with_k.size() - colon - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw unknown_name("bad k in '" + name_with_k + "' (expected name:k)");
    }
    if (k < 1) throw unknown_name("k must be >= 1 in '" + name_with_k + "'");
  }
  return make_builtin(name, k, std::move(sieve));
}

}  // namespace bivar
