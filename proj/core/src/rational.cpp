#include <bivar/rational.hpp>

#include <stdexcept>

namespace bivar {

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rat::Rat(i128 n, i128 d) {
  if (d == 0) throw std::invalid_argument("Rat: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = n;
  den = d;
}

Rat Rat::operator+(const Rat& o) const {
  // a/b + c/d = (a*(d/g) + c*(b/g)) / (b*(d/g)) with g = gcd(b, d); keeps
  // intermediates small before the final reduction.
  i128 g = gcd128(den, o.den);
  i128 lhs = checked_mul(num, o.den / g);
  i128 rhs = checked_mul(o.num, den / g);
  return Rat(checked_add(lhs, rhs), checked_mul(den, o.den / g));
}

Rat Rat::operator-(const Rat& o) const { return *this + (-o); }

Rat Rat::operator*(const Rat& o) const {
  i128 g1 = gcd128(num, o.den);
  i128 g2 = gcd128(o.num, den);
  return Rat(checked_mul(num / g1, o.num / g2),
             checked_mul(den / g2, o.den / g1));
}

Rat Rat::operator/(const Rat& o) const {
  if (o.num == 0) throw std::invalid_argument("Rat: division by zero");
  return *this * Rat(o.den, o.num);
}

double Rat::to_double() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string to_string(const Rat& r) {
  if (r.den == 1) return to_string(r.num);
  return to_string(r.num) + "/" + to_string(r.den);
}

}  // namespace bivar
