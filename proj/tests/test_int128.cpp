#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bivar/int128.hpp>

#include <limits>

using namespace bivar;

namespace {
const i128 kI128Max = ~(i128(1) << 127);  // 2^127 - 1
const i128 kI128Min = i128(1) << 127;
}  // namespace

TEST_CASE("checked arithmetic returns exact values in range") {
  CHECK(checked_add(i128(3), i128(4)) == 7);
  CHECK(checked_sub(i128(3), i128(4)) == -1);
  CHECK(checked_mul(i128(1) << 62, i128(4)) == i128(1) << 64);
  CHECK(checked_mul(i128(-5), i128(7)) == -35);
}

TEST_CASE("checked arithmetic throws at the 128-bit boundary") {
  CHECK_THROWS_AS(checked_add(kI128Max, i128(1)), overflow128_error);
  CHECK_THROWS_AS(checked_sub(kI128Min, i128(1)), overflow128_error);
  CHECK_THROWS_AS(checked_mul(i128(1) << 64, i128(1) << 64), overflow128_error);
  // one below the boundary still works
  CHECK(checked_add(kI128Max - 1, i128(1)) == kI128Max);
}

TEST_CASE("ipow matches repeated multiplication") {
  CHECK(ipow(0, 0) == 1);  // empty product convention
  CHECK(ipow(0, 5) == 0);
  CHECK(ipow(7, 0) == 1);
  CHECK(ipow(2, 10) == 1024);
  CHECK(ipow(3, 20) == 3486784401LL);
  CHECK(ipow(-2, 3) == -8);
  CHECK(ipow(-2, 4) == 16);
  CHECK(ipow(10, 30) == checked_mul(ipow(10, 15), ipow(10, 15)));
}

TEST_CASE("ipow overflow is detected, not wrapped") {
  CHECK_THROWS_AS(ipow(2, 127), overflow128_error);
  CHECK_THROWS_AS(ipow(10, 40), overflow128_error);
  CHECK(ipow(2, 126) == i128(1) << 126);
}

TEST_CASE("to_string round-trips through decimal digits") {
  CHECK(to_string(i128(0)) == "0");
  CHECK(to_string(i128(42)) == "42");
  CHECK(to_string(i128(-42)) == "-42");
  CHECK(to_string(i128(1) << 100) == "1267650600228229401496703205376");
  CHECK(to_string(kI128Max) == "170141183460469231731687303715884105727");
  CHECK(to_string(kI128Min) == "-170141183460469231731687303715884105728");
}

TEST_CASE("fits_double_exact brackets 2^53") {
  CHECK(fits_double_exact(i128(1) << 53));
  CHECK(fits_double_exact(-(i128(1) << 53)));
  CHECK(!fits_double_exact((i128(1) << 53) + 1));
  CHECK(fits_double_exact(i128(0)));
}
