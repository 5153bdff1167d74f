#include <bivar/bivar.hpp>

#include <benchmark/benchmark.h>

#include <memory>

using namespace bivar;

namespace {

std::shared_ptr<const FactorSieve> shared_sieve(u64 bound) {
  static std::shared_ptr<const FactorSieve> s =
      std::make_shared<const FactorSieve>(1 << 20);
  if (bound > s->bound()) s = std::make_shared<const FactorSieve>(bound);
  return s;
}

}  // namespace

static void BM_sieve_build(benchmark::State& state) {
  const u64 bound = u64(state.range(0));
  for (auto _ : state) {
    FactorSieve s(bound);
    benchmark::DoNotOptimize(s.spf(bound));
  }
  state.SetItemsProcessed(state.iterations() * int64_t(bound));
}
BENCHMARK(BM_sieve_build)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 24);

static void BM_direct_sum_gcd(benchmark::State& state) {
  const double x = double(state.range(0));
  auto sv = shared_sieve(u64(x));
  Builtin b = make_builtin("gcd", 1, sv);
  for (auto _ : state) {
    SumResult r = partial_sum_direct(b.fn, x, x);
    benchmark::DoNotOptimize(r.value);
  }
  state.SetItemsProcessed(state.iterations() * int64_t(x) * int64_t(x));
}
BENCHMARK(BM_direct_sum_gcd)->Arg(100)->Arg(400)->Arg(1600);

static void BM_gcd_composed_sigma(benchmark::State& state) {
  const double x = double(state.range(0));
  OneVarCache cache;
  partial_sum_gcd_composed("sigma", x, cache);  // tables built once
  for (auto _ : state) {
    SumResult r = partial_sum_gcd_composed("sigma", x, cache);
    benchmark::DoNotOptimize(r.value);
  }
  state.SetItemsProcessed(state.iterations() * int64_t(x));
}
BENCHMARK(BM_gcd_composed_sigma)->Arg(100000)->Arg(1000000);

static void BM_conv_one_gcd(benchmark::State& state) {
  const double x = double(state.range(0));
  auto sv = shared_sieve(u64(x));
  Builtin b = make_builtin("gcd", 1, sv);
  for (auto _ : state) {
    SumResult r = partial_sum_conv_one(b.fn, x);
    benchmark::DoNotOptimize(r.value);
  }
  state.SetItemsProcessed(state.iterations() * int64_t(x) * int64_t(x));
}
BENCHMARK(BM_conv_one_gcd)->Arg(100)->Arg(400)->Arg(1600);

static void BM_phi_weighted_s(benchmark::State& state) {
  const double x = double(state.range(0));
  OneVarCache cache;
  partial_sum_conv_one_weighted("id", ConvWeight::unit, x, cache);
  for (auto _ : state) {
    SumResult r = partial_sum_conv_one_weighted("id", ConvWeight::unit, x, cache);
    benchmark::DoNotOptimize(r.value);
  }
  state.SetItemsProcessed(state.iterations() * int64_t(x));
}
BENCHMARK(BM_phi_weighted_s)->Arg(100000)->Arg(1000000);

static void BM_global_product_adaptive(benchmark::State& state) {
  const u64 pmax = u64(state.range(0));
  auto sv = shared_sieve(100);
  Builtin b = make_builtin("gcd", 1, sv);
  for (auto _ : state) {
    ProductResult r = global_product(b.spec, 1, Variant::th1, pmax, 1e-12);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_global_product_adaptive)->Arg(10000)->Arg(100000)->Arg(1000000);

static void BM_global_product_closed(benchmark::State& state) {
  const u64 pmax = u64(state.range(0));
  auto wf = [](u64 p) {
    double q = 1.0 / double(p);
    return 1.0 - q * q;
  };
  for (auto _ : state) {
    ProductResult r = global_product_closed(wf, pmax);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_global_product_closed)->Arg(100000)->Arg(1000000);

static void BM_local_inverse(benchmark::State& state) {
  const u32 numax = u32(state.range(0));
  LocalTable F(2, numax);
  for (u32 a = 0; a <= numax; ++a)
    for (u32 b = 0; b <= numax; ++b) F.set(a, b, tau_k_local(3, a, b));
  for (auto _ : state) {
    LocalTable inv = inverse_local(F);
    benchmark::DoNotOptimize(inv.at(numax, numax));
  }
}
BENCHMARK(BM_local_inverse)->Arg(8)->Arg(16)->Arg(32);

static void BM_dense_convolve(benchmark::State& state) {
  const u32 bound = u32(state.range(0));
  auto sv = shared_sieve(bound);
  Builtin f = make_builtin("gcd", 1, sv);
  Builtin g = make_builtin("sigma_gcd", 1, sv);
  DenseTable2 A = DenseTable2::from_fn(f.fn, bound);
  DenseTable2 B = DenseTable2::from_fn(g.fn, bound);
  for (auto _ : state) {
    DenseTable2 C = convolve_table(A, B);
    benchmark::DoNotOptimize(C.at(bound, bound));
  }
}
BENCHMARK(BM_dense_convolve)->Arg(16)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
