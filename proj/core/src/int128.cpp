#include <bivar/int128.hpp>

namespace bivar {

i128 ipow(i128 base, u32 e) {
  i128 r = 1;
  while (e) {
    if (e & 1) r = checked_mul(r, base);
    e >>= 1;
    if (e) base = checked_mul(base, base);
  }
  return r;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 u = neg ? u128(0) - u128(v) : u128(v);
  char buf[48];
  int i = 48;
  while (u) {
    buf[--i] = char('0' + int(u % 10));
    u /= 10;
  }
  std::string s(buf + i, 48 - i);
  return neg ? "-" + s : s;
}

}  // namespace bivar
