#pragma once

// The 2D Dirichlet convolution ring:
//
//   (f*g)(n1,n2) = sum_{d1|n1, d2|n2} f(d1,d2) g(n1/d1, n2/d2),
//   identity delta(n1,n2) = [n1 = n2 = 1].
//
// At a fixed prime the ring restricts to tables over exponent pairs (a,b),
// where convolution is a 2D Cauchy product and inversion is a lattice
// recursion. Closed forms implemented here:
//
//   tau_k   = one * ... * one (k times);  tau_k(p^a,p^b) = C(a+k-1,k-1) C(b+k-1,k-1)
//   mu_k    = tau_k^{-1};   mu_k(p^a,p^b) = (-1)^{a+b} C(k,a) C(k,b)  (0 past k)
//   tilde_tau_k = one^{*(k-1)} * gcd  (k >= 2), tilde_tau_1 = gcd
//   tilde_mu    = gcd^{-1}, the five-case table
//   tilde_mu_k  = mu_{k-1} * tilde_mu (k >= 2), no closed form: computed locally
//
// All arithmetic exact in i128.

#include <bivar/fn2.hpp>
#include <bivar/int128.hpp>
#include <bivar/rational.hpp>

#include <vector>

namespace bivar {

// Pascal-recurrence binomials, exact, n <= 128.
i128 binomial(u32 n, u32 k);

class LocalTable {
 public:
  LocalTable(u64 p, u32 numax);  // zero-filled
  static LocalTable from_spec(const PrimePowerSpec& spec, u64 p, u32 numax);

  u64 p() const { return p_; }
  u32 numax() const { return numax_; }
  i128 at(u32 a, u32 b) const { return v_[idx(a, b)]; }
  void set(u32 a, u32 b, i128 x) { v_[idx(a, b)] = x; }
  bool operator==(const LocalTable& o) const = default;

 private:
  std::size_t idx(u32 a, u32 b) const { return std::size_t(a) * (numax_ + 1) + b; }
  u64 p_;
  u32 numax_;
  std::vector<i128> v_;
};

// (F*G)[a][b] = sum_{i<=a, j<=b} F[i][j] G[a-i][b-j]; requires same prime.
i128 convolve_local_at(const LocalTable& F, const LocalTable& G, u32 a, u32 b);
LocalTable convolve_local(const LocalTable& F, const LocalTable& G);

// Lattice recursion: G[0][0] = 1/F[0][0],
// G[a][b] = -(1/F[0][0]) sum_{(i,j) != (0,0)} F[i][j] G[a-i][b-j].
// Exact-integer path, so F[0][0] must be +-1 (all tables of interest are
// multiplicative with F[0][0] = 1); F[0][0] = 0 is not invertible.
LocalTable inverse_local(const LocalTable& F);

// Closed forms at prime-power pairs (p only enters where the value depends
// on it).
i128 mu_k_local(u32 k, u32 a, u32 b);
i128 tilde_mu_local(u64 p, u32 a, u32 b);
i128 tilde_mu_k_local(u32 k, u64 p, u32 a, u32 b);
i128 tau_k_local(u32 k, u32 a, u32 b);
i128 tilde_tau_k_local(u32 k, u64 p, u32 a, u32 b);

// Dense table of values over 1..bound x 1..bound (1-indexed grid).
class DenseTable2 {
 public:
  explicit DenseTable2(u32 bound);  // zero-filled
  u32 bound() const { return bound_; }
  i128 at(u32 n1, u32 n2) const { return v_[idx(n1, n2)]; }
  void set(u32 n1, u32 n2, i128 x) { v_[idx(n1, n2)] = x; }
  bool operator==(const DenseTable2& o) const = default;

  static DenseTable2 delta(u32 bound);
  static DenseTable2 ones(u32 bound);
  static DenseTable2 from_fn(const Fn2& f, u32 bound);

 private:
  std::size_t idx(u32 n1, u32 n2) const {
    return std::size_t(n1 - 1) * bound_ + (n2 - 1);
  }
  u32 bound_;
  std::vector<i128> v_;
};

struct RatTable2 {
  u32 bound;
  std::vector<Rat> v;  // same 1-indexed layout as DenseTable2
  Rat at(u32 n1, u32 n2) const { return v[std::size_t(n1 - 1) * bound + (n2 - 1)]; }
};

// Pointwise convolution of general evaluators (divisor enumeration).
i128 convolve_at(const Fn2& f, const Fn2& g, const FactorSieve& sieve, u64 n1, u64 n2);
double convolve_at_real(const Fn2& f, const Fn2& g, const FactorSieve& sieve, u64 n1, u64 n2);

// Full-table convolution over the divisor lattice (multiple enumeration, no
// sieve needed).
DenseTable2 convolve_table(const DenseTable2& f, const DenseTable2& g);

// Dirichlet inverse by row-major lattice recursion. Exact integers when
// f(1,1) = +-1; any other nonzero f(1,1) goes through inverse_table_rat.
DenseTable2 inverse_table(const DenseTable2& f);
RatTable2 inverse_table_rat(const DenseTable2& f);

}  // namespace bivar
