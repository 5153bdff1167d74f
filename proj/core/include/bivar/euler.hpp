#pragma once

// Truncated Euler products and double Dirichlet series for the mean-value
// limit constants:
//
//   variant i   C_k  prod_p (1-1/p)^{2k}   sum_{v1,v2} f(p^v1,p^v2)/p^{v1+v2}
//   variant ii  C~k' prod_p (1-1/p)^{2k+1} sum_{v1,v2} f(p^v1,p^v2)/p^{v1+v2}
//
// with C_k = 1/((k-1)!)^2 and C~k' = zeta(2) C~k = 1/(((k-1)!)^2 (2k-1)).
// The th1 normalization is the k = 1 case of variant ii (C~1' = 1). Series
// route: constant times sum_{n1,n2<=N} g(n1,n2)/(n1 n2) for g the inverted
// convolution partner.

#include <bivar/fn2.hpp>
#include <bivar/rational.hpp>
#include <bivar/summation.hpp>

#include <functional>
#include <string>

namespace bivar {

namespace constants {
double euler_gamma();
double zeta2();        // pi^2/6
double zeta2_prime();  // zeta'(2) = -sum log n / n^2, Euler-Maclaurin, cached
double c_k(int k);     // 1/((k-1)!)^2
Rat c_k_rat(int k);
double tilde_c_k(int k);        // C~k = C~k'/zeta(2)
double tilde_c_k_prime(int k);  // C~k' = 1/(((k-1)!)^2 (2k-1))
Rat tilde_c_k_prime_rat(int k);
}  // namespace constants

struct LocalFactorResult {
  u64 p = 2;
  double value = 0;      // truncated local sum sum_{v1+v2<=numax} f/p^{v1+v2}
  double tail_bound = 0; // (last shell) * r/(1-r), r from the last two shells
  u32 numax_used = 0;
};

// Adaptive truncation over diagonal shells v1+v2 = m: stop once the shell
// magnitude is below eps and shells are non-increasing; p = 2 sums at least
// to m = 32 (slowest geometric decay). no_convergence if shells still grow
// at m = 64 or eps is unreached at m = 256.
LocalFactorResult local_factor(const PrimePowerSpec& spec, u64 p, double eps);

// (1-1/p)^{2k} (variant th2i) or (1-1/p)^{2k+1} (th2ii/th1) times the local sum.
double weight_exponent(Variant v, int k);
double weighted_local_factor(const PrimePowerSpec& spec, u64 p, int k, Variant v,
                             double eps);

struct ProductResult {
  double value = 1;
  u64 pmax = 0;
  double per_prime_tail = 0;  // |log contribution| of the largest prime used
  std::string truncation_note;
  double extrapolated = 0;    // prime-zeta tail heuristic, diagnostic only
};

// Product of weighted local factors over p <= pmax, accumulated in log space
// (ascending primes, blocked deterministic reduction). Throws no_convergence
// naming the offending prime if a weighted factor is <= 0.
ProductResult global_product(const PrimePowerSpec& spec, int k, Variant v,
                             u64 pmax, double eps, const ExecPolicy& pol = {});

// Same machinery with per-prime factors given in closed form.
ProductResult global_product_closed(const std::function<double(u64)>& wfactor,
                                    u64 pmax, const ExecPolicy& pol = {});

// sum_{n1,n2 <= N} g(n1,n2)/(n1 n2), compensated, row-major.
double series_direct(const Fn2& g, u64 N, const ExecPolicy& pol = {});

// Closed local factors per example id, as registered:
//   "1" (k)  weighted: (1-1/p)^{2(k-1)} (1 + 2(k-1)/p + (1-k)/p^2)
//   "2"      raw:      (p+2)/(p-1)
//   "3"      raw:      1/(1-1/p)^3
//   "4"      raw:      (1+1/p)^2/(1-1/p)
//   "5a"     weighted: (1-1/p^2)^2
//   "5b"     weighted: (1-1/p)^3 (1+3/p)
//   "6"      raw:      1 + 3/p + 1/p^2
// weight exponent 0 marks a raw registration; otherwise it is the power of
// (1-1/p) already folded into the closed form.
double closed_local_factor(const std::string& example_id, u64 p, int k);
int closed_local_weight_exponent(const std::string& example_id, int k);

// Full right-hand side of the applicable limit theorem.
double theorem_limit_product(const PrimePowerSpec& spec, int k, Variant v,
                             u64 pmax, double eps, const ExecPolicy& pol = {});
double theorem_limit_series(const Fn2& g, int k, Variant v, u64 N,
                            const ExecPolicy& pol = {});

}  // namespace bivar
