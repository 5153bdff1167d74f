#include <bivar/summation.hpp>

#include <bivar/kahan.hpp>

#include <cmath>
#include <stdexcept>

namespace bivar {

namespace {

constexpr double kE = 2.718281828459045235;

u64 floor_bound(double x, const char* who) {
  if (!(x >= 1.0))
    throw std::domain_error(std::string(who) + ": bound must be >= 1");
  if (x > 9.0e15) throw capacity_error(std::string(who) + ": bound too large");
  return static_cast<u64>(std::floor(x));
}

std::vector<u32> primes_u32(u64 bound) {
  std::vector<u32> out;
  for (u64 p : primes_up_to(bound)) out.push_back(static_cast<u32>(p));
  return out;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::direct: return "direct";
    case Method::gcd_composed: return "gcd_composed";
    case Method::conv_one: return "conv_one";
    case Method::phi_weighted: return "phi_weighted";
  }
  return "?";
}

const std::vector<i64>& OneVarCache::table(const std::string& name, u64 bound) {
  if (bound > (u64(1) << 28))
    throw capacity_error("OneVarCache: table bound exceeds 2^28");
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(name, bound);
  auto it = tables_.find(key);
  if (it != tables_.end()) return it->second;
  std::vector<i64> t;
  if (name == "one") {
    t = table_one(bound);
  } else if (name == "id") {
    t = table_id(bound);
  } else if (name == "delta1") {
    t = table_delta1(bound);
  } else if (name == "sigma") {
    t = table_sigma(FactorSieve(bound));
  } else if (name == "phi") {
    t = table_phi(FactorSieve(bound));
  } else if (name == "id_musq") {
    t = table_id_musq(FactorSieve(bound));
  } else {
    throw unknown_name("OneVarCache: unknown table '" + name +
                       "' (one, id, delta1, sigma, phi, id_musq)");
  }
  return tables_.emplace(key, std::move(t)).first->second;
}

const std::vector<i64>& OneVarCache::mobius(const std::string& name, u64 bound) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = mobius_.find(std::make_pair(name, bound));
    if (it != mobius_.end()) return it->second;
  }
  std::vector<i64> g = table(name, bound);  // copy, then transform in place
  mobius_transform(g, primes_u32(bound));
  std::lock_guard<std::mutex> lock(mu_);
  return mobius_.emplace(std::make_pair(name, bound), std::move(g)).first->second;
}

SumResult partial_sum_direct(const Fn2& f, double x, double y,
                             const ExecPolicy& pol) {
  u64 X = floor_bound(x, "partial_sum_direct");
  u64 Y = floor_bound(y, "partial_sum_direct");
  if (X > pol.point_budget / Y)  // X*Y > budget, overflow-safe
    throw budget_exceeded(
        "partial_sum_direct: " + std::to_string(X) + "x" + std::to_string(Y) +
        " lattice points exceed the budget; use an accelerated method");
  SumResult r;
  r.x = x;
  r.y = y;
  r.terms = X * Y;
  r.method = Method::direct;
  r.blocks = pol.threads > 1 ? pol.threads : 1;
  if (f.integer_valued) {
    i128 s = blocked_reduce_int(1, X + 1, r.blocks, [&](u64 n1) {
      i128 row = 0;
      for (u64 n2 = 1; n2 <= Y; ++n2) row = checked_add(row, f.at(n1, n2));
      return row;
    });
    r.exact = s;
    r.value = static_cast<double>(s);
  } else {
    r.value = blocked_reduce(1, X + 1, r.blocks, [&](u64 n1) {
      Kahan row;
      for (u64 n2 = 1; n2 <= Y; ++n2) row.add(f.at_real(n1, n2));
      return row.get();
    });
  }
  return r;
}

SumResult partial_sum_gcd_composed(const std::string& f_name, double x,
                                   OneVarCache& cache) {
  u64 X = floor_bound(x, "partial_sum_gcd_composed");
  const std::vector<i64>& g = cache.mobius(f_name, X);  // F * mu
  i128 s = 0;
  for (u64 d = 1; d <= X; ++d) {
    if (g[d] == 0) continue;
    i128 q = i128(X / d);
    s = checked_add(s, checked_mul(i128(g[d]), checked_mul(q, q)));
  }
  SumResult r;
  r.x = x;
  r.y = x;
  r.exact = s;
  r.value = static_cast<double>(s);
  r.terms = X;
  r.method = Method::gcd_composed;
  r.blocks = 1;
  return r;
}

SumResult partial_sum_conv_one(const Fn2& g, double x, const ExecPolicy& pol) {
  u64 X = floor_bound(x, "partial_sum_conv_one");
  if (X > pol.point_budget / X)  // X^2 > budget, overflow-safe
    throw budget_exceeded("partial_sum_conv_one: " + std::to_string(X) + "^2" +
                          " points exceed the budget");
  SumResult r;
  r.x = x;
  r.y = x;
  r.terms = X * X;
  r.method = Method::conv_one;
  r.blocks = pol.threads > 1 ? pol.threads : 1;
  if (g.integer_valued) {
    i128 s = blocked_reduce_int(1, X + 1, r.blocks, [&](u64 d1) {
      i128 row = 0;
      i128 q1 = i128(X / d1);
      for (u64 d2 = 1; d2 <= X; ++d2)
        row = checked_add(row,
                          checked_mul(g.at(d1, d2), checked_mul(q1, i128(X / d2))));
      return row;
    });
    r.exact = s;
    r.value = static_cast<double>(s);
  } else {
    r.value = blocked_reduce(1, X + 1, r.blocks, [&](u64 d1) {
      Kahan row;
      double q1 = static_cast<double>(X / d1);
      for (u64 d2 = 1; d2 <= X; ++d2)
        row.add(g.at_real(d1, d2) * q1 * static_cast<double>(X / d2));
      return row.get();
    });
  }
  return r;
}

SumResult partial_sum_conv_one_weighted(const std::string& f_name, ConvWeight w,
                                        double x, OneVarCache& cache,
                                        const ExecPolicy& pol) {
  u64 X = floor_bound(x, "partial_sum_conv_one_weighted");
  if (X > pol.point_budget)
    throw budget_exceeded("partial_sum_conv_one_weighted: " + std::to_string(X) +
                          " outer terms already exceed the budget");
  u64 work = 0;
  for (u64 e = 1; e <= X; ++e) work += 1 + X / e;
  if (work > pol.point_budget)
    throw budget_exceeded("partial_sum_conv_one_weighted: " +
                          std::to_string(work) + " points exceed the budget");
  const std::vector<i64>& g = cache.mobius(f_name, X);  // F * mu
  SumResult r;
  r.x = x;
  r.y = x;
  r.terms = work;
  r.method = Method::phi_weighted;
  r.blocks = pol.threads > 1 ? pol.threads : 1;
  if (w == ConvWeight::unit) {
    i128 s = blocked_reduce_int(1, X + 1, r.blocks, [&](u64 e) -> i128 {
      if (g[e] == 0) return 0;
      u64 q = X / e;  // floor(X/(e m)) = floor(q/m)
      i128 t = 0;
      for (u64 m = 1; m <= q; ++m) t = checked_add(t, i128(q / m));
      return checked_mul(i128(g[e]), checked_mul(t, t));
    });
    r.exact = s;
    r.value = static_cast<double>(s);
  } else {
    const std::vector<i64>& phi = cache.table("phi", X);
    r.value = blocked_reduce(1, X + 1, r.blocks, [&](u64 e) -> double {
      if (g[e] == 0) return 0.0;
      Kahan inner;
      for (u64 m = 1, em = e; m <= X / e; ++m, em += e)
        inner.add(double(phi[em]) / double(em) * double(X / em));
      double t = inner.get();
      return double(g[e]) * t * t;
    });
  }
  return r;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::th1: return "th1";
    case Variant::th2i: return "th2i";
    case Variant::th2ii: return "th2ii";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  if (s == "th1") return Variant::th1;
  if (s == "th2i") return Variant::th2i;
  if (s == "th2ii") return Variant::th2ii;
  throw unknown_name("unknown variant '" + s + "' (th1, th2i, th2ii)");
}

double normalization(Variant v, int k, double x, double y) {
  if (k < 1) throw std::domain_error("normalization: k >= 1 required");
  if (!(x > kE)) throw std::domain_error("normalization: x <= e");
  if (v != Variant::th2ii && !(y > kE))
    throw std::domain_error("normalization: y <= e");
  switch (v) {
    case Variant::th1:
      return x * y * std::log(std::min(x, y));
    case Variant::th2i:
      return x * y * std::pow(std::log(x) * std::log(y), k - 1);
    case Variant::th2ii:
      return x * x * std::pow(std::log(x), 2 * k - 1);
  }
  throw std::logic_error("normalization: bad variant");
}

NormalizedMean normalize(const SumResult& s, Variant v, int k) {
  NormalizedMean m;
  m.variant = v;
  m.k = k;
  m.x = s.x;
  m.y = s.y;
  m.normalized = s.value / normalization(v, k, s.x, s.y);
  return m;
}

NormalizedMean normalized_mean(const Fn2& f, Variant v, int k, double x,
                               double y, const ExecPolicy& pol) {
  if (v == Variant::th2ii) y = x;
  return normalize(partial_sum_direct(f, x, y, pol), v, k);
}

double lemma1_sum(double alpha, double x) {
  if (alpha < 0) throw std::domain_error("lemma1_sum: alpha >= 0 required");
  u64 X = floor_bound(x, "lemma1_sum");
  Kahan acc;
  for (u64 n = 1; n <= X; ++n)
    acc.add(std::pow(std::log(double(n)), alpha) / double(n));
  return acc.get();
}

double lemma4_sum(double x, double y) {
  u64 X = floor_bound(x, "lemma4_sum");
  u64 Y = floor_bound(y, "lemma4_sum");
  // Group by m = min(n1,n2): the count of pairs with min exactly m is
  // (X-m+1)(Y-m+1) - (X-m)(Y-m).
  u64 M = std::min(X, Y);
  Kahan acc;
  for (u64 m = 2; m <= M; ++m) {
    double with_min_ge_m = double(X - m + 1) * double(Y - m + 1);
    double with_min_gt_m = double(X - m) * double(Y - m);
    acc.add(std::log(double(m)) * (with_min_ge_m - with_min_gt_m));
  }
  return acc.get();
}

double lemma5_sum(double x) {
  u64 X = floor_bound(x, "lemma5_sum");
  // Group by m = min: pairs are (m,m) and, for n > m, both (m,n) and (n,m):
  //   sum = sum_m log(m)/m * (1/m + 2 (H(X) - H(m))), H = harmonic prefix.
  Kahan HX;
  for (u64 n = 1; n <= X; ++n) HX.add(1.0 / double(n));
  Kahan H, acc;
  H.add(1.0);
  for (u64 m = 2; m <= X; ++m) {
    H.add(1.0 / double(m));
    acc.add(std::log(double(m)) / double(m) *
            (1.0 / double(m) + 2.0 * (HX.get() - H.get())));
  }
  return acc.get();
}

double lemma6_sum(double alpha, double beta, double x) {
  if (alpha < 0 || beta < 0)
    throw std::domain_error("lemma6_sum: alpha, beta >= 0 required");
  u64 X = floor_bound(x, "lemma6_sum");
  // min(x/n1, x/n2) = x/max(n1,n2); group by M = max(n1,n2) using prefix sums
  // A(m) = sum_{n<=m} log^alpha(n)/n and B likewise for beta.
  Kahan A, B, acc;
  A.add(std::pow(std::log(1.0), alpha) / 1.0);
  B.add(std::pow(std::log(1.0), beta) / 1.0);
  for (u64 M = 2; M <= X; ++M) {
    double lM = std::log(double(M));
    double la = std::pow(lM, alpha), lb = std::pow(lM, beta);
    double aM = la / double(M), bM = lb / double(M);
    double weight = std::log(x / double(M));
    // (n1 = M, n2 < M), (n1 < M, n2 = M), (M, M)
    acc.add(weight * (aM * B.get() + bM * A.get() + aM * bM));
    A.add(aM);
    B.add(bM);
  }
  // M = 1 contributes log^a(1) log^b(1) log(x) = log(x) iff alpha = beta = 0
  // via pow(0,0) = 1; fold it explicitly for clarity.
  acc.add(std::pow(0.0, alpha) * std::pow(0.0, beta) * std::log(x));
  return acc.get();
}

namespace {

// Inclusive prefix-sum table M(u,v) = sum_{n1<=u, n2<=v} a(n1,n2), 0-padded.
std::vector<i128> prefix_table(const DenseTable2& a, u32 x, u32 y) {
  std::vector<i128> M(std::size_t(x + 1) * (y + 1), 0);
  auto at = [&](u32 u, u32 v) -> i128& { return M[std::size_t(u) * (y + 1) + v]; };
  for (u32 u = 1; u <= x; ++u)
    for (u32 v = 1; v <= y; ++v)
      at(u, v) = checked_sub(
          checked_add(checked_add(a.at(u, v), at(u - 1, v)), at(u, v - 1)),
          at(u - 1, v - 1));
  return M;
}

}  // namespace

std::pair<double, double> abel2d_check(const DenseTable2& a, u32 x, u32 y) {
  if (x < 1 || y < 1 || x > a.bound() || y > a.bound())
    throw capacity_error("abel2d_check: x, y must lie in [1, bound]");
  std::vector<i128> M = prefix_table(a, x, y);
  auto Mat = [&](u32 u, u32 v) { return M[std::size_t(u) * (y + 1) + v]; };
  Kahan lhs;
  for (u32 n1 = 1; n1 <= x; ++n1)
    for (u32 n2 = 1; n2 <= y; ++n2)
      lhs.add(double(a.at(n1, n2)) / (double(n1) * double(n2)));
  Kahan rhs;
  for (u32 n1 = 1; n1 <= x; ++n1)
    for (u32 n2 = 1; n2 <= y; ++n2)
      rhs.add(double(Mat(n1, n2)) /
              (double(n1) * double(n1 + 1) * double(n2) * double(n2 + 1)));
  for (u32 n1 = 1; n1 <= x; ++n1)
    rhs.add(double(Mat(n1, y)) / (double(n1) * double(n1 + 1) * double(y + 1)));
  for (u32 n2 = 1; n2 <= y; ++n2)
    rhs.add(double(Mat(x, n2)) / (double(n2) * double(n2 + 1) * double(x + 1)));
  rhs.add(double(Mat(x, y)) / (double(x + 1) * double(y + 1)));
  return {lhs.get(), rhs.get()};
}

std::pair<Rat, Rat> abel2d_check_exact(const DenseTable2& a, u32 x, u32 y) {
  if (x < 1 || y < 1 || x > a.bound() || y > a.bound())
    throw capacity_error("abel2d_check_exact: x, y must lie in [1, bound]");
  std::vector<i128> M = prefix_table(a, x, y);
  auto Mat = [&](u32 u, u32 v) { return M[std::size_t(u) * (y + 1) + v]; };
  Rat lhs(0);
  for (u32 n1 = 1; n1 <= x; ++n1)
    for (u32 n2 = 1; n2 <= y; ++n2)
      lhs = lhs + Rat(a.at(n1, n2), i128(n1) * n2);
  Rat rhs(0);
  for (u32 n1 = 1; n1 <= x; ++n1)
    for (u32 n2 = 1; n2 <= y; ++n2)
      rhs = rhs + Rat(Mat(n1, n2), i128(n1) * (n1 + 1) * n2 * (n2 + 1));
  for (u32 n1 = 1; n1 <= x; ++n1)
    rhs = rhs + Rat(Mat(n1, y), i128(n1) * (n1 + 1) * (i128(y) + 1));
  for (u32 n2 = 1; n2 <= y; ++n2)
    rhs = rhs + Rat(Mat(x, n2), i128(n2) * (n2 + 1) * (i128(x) + 1));
  rhs = rhs + Rat(Mat(x, y), (i128(x) + 1) * (i128(y) + 1));
  return {lhs, rhs};
}

}  // namespace bivar
