#pragma once

// 128-bit exact integer support. All integer-valued arithmetic functions in
// this library accumulate in i128 so that algebra identities can be tested
// for exact equality; overflow is detected, never wrapped.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bivar {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i128 = __int128_t;
using u128 = __uint128_t;

struct overflow128_error : std::overflow_error {
  using std::overflow_error::overflow_error;
};

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow128_error("i128 addition overflow");
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw overflow128_error("i128 subtraction overflow");
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow128_error("i128 multiplication overflow");
  return r;
}

// base^e with overflow checking; 0^0 = 1 by convention.
i128 ipow(i128 base, u32 e);

std::string to_string(i128 v);

// |v| <= 2^53 converts to double without rounding; used by serializers to
// decide between JSON number and string representation.
inline bool fits_double_exact(i128 v) {
  const i128 lim = i128(1) << 53;
  return v >= -lim && v <= lim;
}

}  // namespace bivar
