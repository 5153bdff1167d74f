#pragma once

// Exact rationals over i128, for the places where integer division is not
// available: the 2D partial-summation identity (denominators n(n+1)) and
// Dirichlet inversion of tables with a non-unit leading value.

#include <bivar/int128.hpp>

namespace bivar {

struct Rat {
  i128 num = 0;
  i128 den = 1;  // always > 0, gcd(num, den) = 1

  Rat() = default;
  Rat(i128 n) : num(n), den(1) {}
  Rat(i128 n, i128 d);

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  Rat operator-() const { return Rat(-num, den); }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }

  bool is_integer() const { return den == 1; }
  double to_double() const;
};

i128 gcd128(i128 a, i128 b);
std::string to_string(const Rat& r);

}  // namespace bivar
