#pragma once

// Partial sums over lattice boxes [1,x] x [1,y] and their exact
// accelerations:
//
//   direct        sum_{n1<=x, n2<=y} f(n1,n2)                 O(xy) points
//   gcd_composed  sum F(gcd)  = sum_d (F*mu)(d) floor(x/d)^2  O(x) after sieve
//   conv_one      sum (g*one) = sum_{d1,d2} g(d1,d2) floor(x/d1) floor(x/d2)
//   phi_weighted  conv_one for g(n1,n2) = w(n1) w(n2) F(gcd(n1,n2)):
//                 sum_e (F*mu)(e) (sum_{m<=x/e} w(em) floor(x/(em)))^2
//
// x, y are accepted as reals but floored once at entry; everything downstream
// uses the integer parts. Integer-valued sums are exact in i128; float sums
// use compensated accumulation in fixed row-major order (deterministic given
// the block count).

#include <bivar/convolution.hpp>
#include <bivar/errors.hpp>
#include <bivar/fn2.hpp>
#include <bivar/rational.hpp>
#include <bivar/sieve.hpp>

#include <map>
#include <mutex>
#include <optional>

namespace bivar {

enum class Method { direct, gcd_composed, conv_one, phi_weighted };
const char* method_name(Method m);

struct ExecPolicy {
  int threads = 1;
  u64 point_budget = 200'000'000;  // refuse, never approximate, beyond this
};

struct SumResult {
  double x = 0, y = 0;
  double value = 0;             // always set; rounded from `exact` when present
  std::optional<i128> exact;    // set for integer-valued sums
  u64 terms = 0;                // lattice/loop terms visited
  Method method = Method::direct;
  int blocks = 1;               // reduction block count (determinism contract)
};

// One-variable tables and their Mobius transforms, cached per (name, bound).
// Known names: one, id, delta1, sigma, phi, id_musq.
class OneVarCache {
 public:
  const std::vector<i64>& table(const std::string& name, u64 bound);
  const std::vector<i64>& mobius(const std::string& name, u64 bound);

 private:
  std::mutex mu_;
  std::map<std::pair<std::string, u64>, std::vector<i64>> tables_, mobius_;
};

SumResult partial_sum_direct(const Fn2& f, double x, double y,
                             const ExecPolicy& pol = {});

// S = sum_{n1,n2<=x} F(gcd(n1,n2)) via the Mobius-transform acceleration.
SumResult partial_sum_gcd_composed(const std::string& f_name, double x,
                                   OneVarCache& cache);

/// Generic conv-one: S = sum_{n1,n2<=x} (g*one)(n1,n2) as a floor-product
// double sum over g's support (O(x^2) points, budget applies).
SumResult partial_sum_conv_one(const Fn2& g, double x, const ExecPolicy& pol = {});

// phi-weighted rewrite for g(n1,n2) = w(n1) w(n2) F(gcd); weight `unit` keeps
// the sum exact in i128, `phi_over_n` (w = phi/id) is compensated float.
enum class ConvWeight { unit, phi_over_n };
SumResult partial_sum_conv_one_weighted(const std::string& f_name, ConvWeight w,
                                        double x, OneVarCache& cache,
                                        const ExecPolicy& pol = {});

enum class Variant { th1, th2i, th2ii };
const char* variant_name(Variant v);
Variant parse_variant(const std::string& s);  // unknown_name on bad tag

struct NormalizedMean {
  Variant variant = Variant::th1;
  int k = 1;
  double x = 0, y = 0;
  double normalized = 0;
};

// Denominators use the real bounds (only the summation range is floored):
//   th1:   x y log(min(x,y))
//   th2i:  x y (log x log y)^{k-1}
//   th2ii: x^2 (log x)^{2k-1}        (y ignored)
// Requires x > e (and y > e where used): every log must be positive.
double normalization(Variant v, int k, double x, double y);
NormalizedMean normalize(const SumResult& s, Variant v, int k);
NormalizedMean normalized_mean(const Fn2& f, Variant v, int k, double x, double y,
                               const ExecPolicy& pol = {});

// Finite log sums behind the asymptotic lemmas (exact rearrangements of the
// stated finite sums, never the asymptotic formulas):
//   lemma1: sum_{n<=x} log^alpha(n)/n
//   lemma4: sum_{n1<=x, n2<=y} log(min(n1,n2))
//   lemma5: sum_{n1,n2<=x} log(min(n1,n2))/(n1 n2)
//   lemma6: sum_{n1,n2<=x} log^a(n1) log^b(n2) log(min(x/n1, x/n2))/(n1 n2)
double lemma1_sum(double alpha, double x);
double lemma4_sum(double x, double y);
double lemma5_sum(double x);
double lemma6_sum(double alpha, double beta, double x);

// Exact 2D partial summation identity. With M(u,v) = sum_{n1<=u, n2<=v} a:
//   sum_{n1<=x, n2<=y} a(n1,n2)/(n1 n2)
//     = sum_{n1<=x, n2<=y} M(n1,n2) / (n1(n1+1) n2(n2+1))
//     + sum_{n1<=x} M(n1, y) / (n1(n1+1) (floor(y)+1))
//     + sum_{n2<=y} M(x, n2) / (n2(n2+1) (floor(x)+1))
//     + M(x, y) / ((floor(x)+1)(floor(y)+1)).
// Float mode (compensated) and exact rational mode.
std::pair<double, double> abel2d_check(const DenseTable2& a, u32 x, u32 y);
std::pair<Rat, Rat> abel2d_check_exact(const DenseTable2& a, u32 x, u32 y);

}  // namespace bivar
