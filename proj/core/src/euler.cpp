#include <bivar/euler.hpp>

#include <bivar/errors.hpp>
#include <bivar/kahan.hpp>

#include <atomic>
#include <cmath>
#include <numbers>

namespace bivar {

namespace constants {

double euler_gamma() { return 0.57721566490153286061; }

double zeta2() { return std::numbers::pi * std::numbers::pi / 6.0; }

double zeta2_prime() {
  // zeta'(2) = -sum_{n>=1} log n / n^2. Euler-Maclaurin from N:
  //   sum_{n>=N} f(n) = int_N^inf f + f(N)/2 - f'(N)/12 + f'''(N)/720 - ...
  // with f(t) = log t / t^2:
  //   int_N^inf f = (log N + 1)/N,  f' = (1 - 2 log t)/t^3,
  //   f''' = (26 - 24 log t)/t^5.
  static const double value = [] {
    const double N = 1'000'000.0;
    Kahan head;
    for (u64 n = 2; n < u64(N); ++n)
      head.add(std::log(double(n)) / (double(n) * double(n)));
    double lnN = std::log(N);
    double tail = (lnN + 1.0) / N;
    tail += (lnN / (N * N)) / 2.0;
    tail -= (1.0 - 2.0 * lnN) / (N * N * N) / 12.0;
    tail += (26.0 - 24.0 * lnN) / (N * N * N * N * N) / 720.0;
    return -(head.get() + tail);
  }();
  return value;
}

Rat c_k_rat(int k) {
  if (k < 1) throw std::domain_error("c_k: k >= 1 required");
  i128 fact = 1;
  for (int j = 2; j < k; ++j) fact = checked_mul(fact, i128(j));
  return Rat(1, checked_mul(fact, fact));
}

double c_k(int k) { return c_k_rat(k).to_double(); }

Rat tilde_c_k_prime_rat(int k) {
  if (k < 1) throw std::domain_error("tilde_c_k_prime: k >= 1 required");
  Rat ck = c_k_rat(k);
  return Rat(ck.num, checked_mul(ck.den, i128(2 * k - 1)));
}

double tilde_c_k_prime(int k) { return tilde_c_k_prime_rat(k).to_double(); }

double tilde_c_k(int k) { return tilde_c_k_prime_rat(k).to_double() / zeta2(); }

}  // namespace constants

LocalFactorResult local_factor(const PrimePowerSpec& spec, u64 p, double eps) {
  if (p < 2) throw std::domain_error("local_factor: p must be prime (>= 2)");
  if (!(eps > 0)) throw std::domain_error("local_factor: eps > 0 required");
  const u32 kGrowFail = 64, kEpsFail = 256;
  const u32 floor_m = (p == 2) ? 32 : 8;
  Kahan acc;
  acc.add(1.0);  // shell m = 0: local(p,0,0)/p^0 = 1
  double prev_shell = 1.0, last_shell = 1.0;
  u32 m = 0;
  double inv_pm = 1.0;
  while (true) {
    ++m;
    inv_pm /= double(p);
    Kahan shell;
    for (u32 v1 = 0; v1 <= m; ++v1) shell.add(spec.local_real(p, v1, m - v1));
    double sh = shell.get() * inv_pm;
    acc.add(sh);
    prev_shell = last_shell;
    last_shell = sh;
    bool increasing = std::abs(last_shell) > std::abs(prev_shell);
    if (increasing && m >= kGrowFail)
      throw no_convergence("local_factor: shells still growing at m = " +
                           std::to_string(m) + " (p = " + std::to_string(p) +
                           ", spec " + spec.name + ")");
    if (m >= floor_m && !increasing && std::abs(last_shell) < eps) break;
    if (m >= kEpsFail)
      throw no_convergence("local_factor: eps not reached by m = " +
                           std::to_string(kEpsFail) + " (p = " +
                           std::to_string(p) + ", spec " + spec.name + ")");
  }
  LocalFactorResult r;
  r.p = p;
  r.value = acc.get();
  r.numax_used = m;
  double la = std::abs(last_shell), pa = std::abs(prev_shell);
  double ratio = pa > 0 ? std::min(la / pa, 0.999) : 0.0;
  r.tail_bound = la * ratio / (1.0 - ratio);
  return r;
}

double weight_exponent(Variant v, int k) {
  if (k < 1) throw std::domain_error("weight_exponent: k >= 1 required");
  switch (v) {
    case Variant::th2i: return 2.0 * k;
    case Variant::th2ii: return 2.0 * k + 1;
    case Variant::th1: return 3.0;  // the k = 1 case of th2ii
  }
  throw std::logic_error("weight_exponent: bad variant");
}

double weighted_local_factor(const PrimePowerSpec& spec, u64 p, int k,
                             Variant v, double eps) {
  return std::pow(1.0 - 1.0 / double(p), weight_exponent(v, k)) *
         local_factor(spec, p, eps).value;
}

namespace {

ProductResult product_over_primes(const std::function<double(u64)>& factor,
                                  u64 pmax, const ExecPolicy& pol) {
  if (pmax < 2) throw std::domain_error("global_product: pmax >= 2 required");
  std::vector<u64> primes = primes_up_to(pmax);
  int blocks = pol.threads > 1 ? pol.threads : 1;
  // Log-space to survive 1e6 primes of factors < 1; capture any non-positive
  // factor by prime (NaN from log would silently poison the product).
  std::vector<double> logs(primes.size());
  std::atomic<u64> bad{0};
  blocked_reduce(0, primes.size(), blocks, [&](u64 i) {
    double f = factor(primes[i]);
    if (!(f > 0.0)) {
      u64 expect = 0;
      bad.compare_exchange_strong(expect, primes[i]);
      logs[i] = 0.0;
      return 0.0;
    }
    logs[i] = std::log(f);
    return 0.0;
  });
  if (bad != 0)
    throw no_convergence("global_product: non-positive local factor at p = " +
                         std::to_string(bad.load()));
  Kahan logsum;  // ascending prime order, deterministic
  for (double l : logs) logsum.add(l);
  ProductResult r;
  r.value = std::exp(logsum.get());
  r.pmax = pmax;
  r.per_prime_tail = std::abs(logs.back());
  // Prime-zeta tail heuristic: |log f(P)| ~ a/P^2 gives
  // sum_{p>P} a/p^2 ~ a/(P log P), i.e. |log f(P)| * P / log P.
  u64 P = primes.back();
  double sign = logs.back() >= 0 ? 1.0 : -1.0;
  double tail_log = sign * r.per_prime_tail * double(P) / std::log(double(P));
  r.extrapolated = r.value * std::exp(tail_log);
  r.truncation_note =
      "truncated at pmax = " + std::to_string(pmax) + "; last |log factor| = " +
      std::to_string(r.per_prime_tail) +
      "; prime-zeta extrapolation recorded separately, never applied";
  return r;
}

}  // namespace

ProductResult global_product(const PrimePowerSpec& spec, int k, Variant v,
                             u64 pmax, double eps, const ExecPolicy& pol) {
  return product_over_primes(
      [&](u64 p) { return weighted_local_factor(spec, p, k, v, eps); }, pmax,
      pol);
}

ProductResult global_product_closed(const std::function<double(u64)>& wfactor,
                                    u64 pmax, const ExecPolicy& pol) {
  return product_over_primes(wfactor, pmax, pol);
}

double series_direct(const Fn2& g, u64 N, const ExecPolicy& pol) {
  if (N < 1) throw std::domain_error("series_direct: N >= 1 required");
  if (N > pol.point_budget / N)
    throw budget_exceeded("series_direct: N^2 points exceed the budget");
  int blocks = pol.threads > 1 ? pol.threads : 1;
  return blocked_reduce(1, N + 1, blocks, [&](u64 n1) {
    Kahan row;
    for (u64 n2 = 1; n2 <= N; ++n2)
      row.add(g.at_real(n1, n2) / (double(n1) * double(n2)));
    return row.get();
  });
}

double closed_local_factor(const std::string& example_id, u64 p, int k) {
  double q = 1.0 / double(p);
  if (example_id == "1") {
    if (k < 1) throw std::domain_error("closed_local_factor: k >= 1 required");
    return std::pow(1.0 - q, 2.0 * (k - 1)) *
           (1.0 + 2.0 * (k - 1) * q + (1.0 - k) * q * q);
  }
  if (example_id == "2") return (double(p) + 2.0) / (double(p) - 1.0);
  if (example_id == "3") return 1.0 / std::pow(1.0 - q, 3.0);
  if (example_id == "4") return (1.0 + q) * (1.0 + q) / (1.0 - q);
  if (example_id == "5a") return (1.0 - q * q) * (1.0 - q * q);
  if (example_id == "5b") return std::pow(1.0 - q, 3.0) * (1.0 + 3.0 * q);
  if (example_id == "6") return 1.0 + 3.0 * q + q * q;
  throw unknown_name("closed_local_factor: no closed form registered for '" +
                     example_id + "' (1, 2, 3, 4, 5a, 5b, 6)");
}

int closed_local_weight_exponent(const std::string& example_id, int k) {
  if (example_id == "1") return 2 * k;      // th2i weight folded in
  if (example_id == "2") return 0;          // raw local sum
  if (example_id == "3") return 0;
  if (example_id == "4") return 0;
  if (example_id == "5a") return 3;         // th2ii (k = 1) weight folded in
  if (example_id == "5b") return 3;
  if (example_id == "6") return 0;
  throw unknown_name("closed_local_weight_exponent: unknown example '" +
                     example_id + "'");
}

double theorem_limit_product(const PrimePowerSpec& spec, int k, Variant v,
                             u64 pmax, double eps, const ExecPolicy& pol) {
  double prefactor = (v == Variant::th2i) ? constants::c_k(k)
                                          : constants::tilde_c_k_prime(k);
  if (v == Variant::th1) prefactor = constants::tilde_c_k_prime(1);
  return prefactor * global_product(spec, k, v, pmax, eps, pol).value;
}

double theorem_limit_series(const Fn2& g, int k, Variant v, u64 N,
                            const ExecPolicy& pol) {
  double prefactor = 0;
  switch (v) {
    case Variant::th2i: prefactor = constants::c_k(k); break;
    case Variant::th2ii: prefactor = constants::tilde_c_k(k); break;
    case Variant::th1: prefactor = 1.0 / constants::zeta2(); break;
  }
  return prefactor * series_direct(g, N, pol);
}

}  // namespace bivar
