#pragma once

// Compensated accumulation (Neumaier variant) plus the deterministic blocked
// reduction used by every parallel float sum: partition an index range into
// contiguous blocks, accumulate each block sequentially with compensation,
// then combine partial sums in ascending block order. Bit-reproducible for a
// fixed block count.

#include <bivar/int128.hpp>

#include <cmath>
#include <exception>
#include <thread>
#include <vector>

namespace bivar {

struct Kahan {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double get() const { return s + c; }
};

// rowsum(i) -> double, evaluated for i in [lo, hi). blocks <= 0 means 1.
template <class RowSum>
double blocked_reduce(u64 lo, u64 hi, int blocks, RowSum rowsum) {
  if (blocks < 1) blocks = 1;
  u64 n = hi > lo ? hi - lo : 0;
  if (blocks == 1 || n < 2 * u64(blocks)) {
    Kahan acc;
    for (u64 i = lo; i < hi; ++i) acc.add(rowsum(i));
    return acc.get();
  }
  std::vector<double> partial(blocks, 0.0);
  std::vector<std::exception_ptr> errors(blocks);
  std::vector<std::thread> pool;
  pool.reserve(blocks);
  for (int b = 0; b < blocks; ++b) {
    u64 b_lo = lo + n * u64(b) / blocks;
    u64 b_hi = lo + n * u64(b + 1) / blocks;
    pool.emplace_back([&partial, &errors, b, b_lo, b_hi, &rowsum] {
      try {
        Kahan acc;
        for (u64 i = b_lo; i < b_hi; ++i) acc.add(rowsum(i));
        partial[b] = acc.get();
      } catch (...) {
        errors[b] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Kahan acc;  // ascending block order: deterministic
  for (double v : partial) acc.add(v);
  return acc.get();
}

// Exact-integer variant (order-independent, same blocking for symmetry).
template <class RowSum>
i128 blocked_reduce_int(u64 lo, u64 hi, int blocks, RowSum rowsum) {
  if (blocks < 1) blocks = 1;
  u64 n = hi > lo ? hi - lo : 0;
  if (blocks == 1 || n < 2 * u64(blocks)) {
    i128 acc = 0;
    for (u64 i = lo; i < hi; ++i) acc = checked_add(acc, rowsum(i));
    return acc;
  }
  std::vector<i128> partial(blocks, 0);
  std::vector<std::exception_ptr> errors(blocks);
  std::vector<std::thread> pool;
  pool.reserve(blocks);
  for (int b = 0; b < blocks; ++b) {
    u64 b_lo = lo + n * u64(b) / blocks;
    u64 b_hi = lo + n * u64(b + 1) / blocks;
    pool.emplace_back([&partial, &errors, b, b_lo, b_hi, &rowsum] {
      try {
        i128 acc = 0;
        for (u64 i = b_lo; i < b_hi; ++i) acc = checked_add(acc, rowsum(i));
        partial[b] = acc;
      } catch (...) {
        errors[b] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  i128 acc = 0;
  for (i128 v : partial) acc = checked_add(acc, v);
  return acc;
}

}  // namespace bivar
