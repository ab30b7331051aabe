#pragma once

#include "polarot/bitmat.hpp"

namespace ot {

// The n x n polar transform, n = 2^m: entry (x, y) is 1 exactly when the
// binary support of y is contained in the support of x. Kronecker power of
// [[1,0],[1,1]] and an involution over GF(2). m <= 16.
BitMatrix build_transform(unsigned m);

// In-place butterfly x := x * T; applying it twice restores x.
void polar_transform_inplace(BitVec& x);

BitVec polar_encode(const BitVec& u);

}  // namespace ot
