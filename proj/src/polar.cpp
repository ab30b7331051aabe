#include "polarot/polar.hpp"

#include <stdexcept>

namespace ot {

BitMatrix build_transform(unsigned m) {
  if (m > 16) throw std::invalid_argument("transform size capped at 2^16");
  const std::size_t n = std::size_t{1} << m;
  BitMatrix t(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    // walk the submasks of x; each is a column with a 1 in row x
    std::size_t s = x;
    while (true) {
      t.set(x, s, true);
      if (s == 0) break;
      s = (s - 1) & x;
    }
  }
  return t;
}

void polar_transform_inplace(BitVec& x) {
  const std::size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("length must be a power of two");
  for (std::size_t b = 1; b < n; b <<= 1)
    for (std::size_t i = 0; i < n; ++i)
      if ((i & b) == 0) x[i] ^= x[i + b];
}

BitVec polar_encode(const BitVec& u) {
  BitVec x = u;
  polar_transform_inplace(x);
  return x;
}

}  // namespace ot
