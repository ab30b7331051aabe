#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polarot/bitmat.hpp"

namespace ot {

// A permutation of {0..n-1} stored as its image table: p[i] is where i goes.
using Perm = std::vector<std::size_t>;

Perm identity_perm(std::size_t n);
bool is_permutation(const Perm& p);
Perm compose(const Perm& a, const Perm& b);  // (a after b)(i) = a[b[i]]
Perm inverse(const Perm& p);
Perm perm_power(const Perm& p, unsigned long long e);

// Cycles listed by their smallest member, each cycle starting at it.
// Fixed points are included as singletons.
std::vector<std::vector<std::size_t>> cycle_decomposition(const Perm& p);
unsigned long long perm_order(const Perm& p);
Perm conjugate_perm(const Perm& pi, const Perm& alpha);  // pi o alpha o pi^-1

// 1-based display form, e.g. "(1 4 3)(2 5)(6)".
std::string cycle_string(const Perm& p);
// Parses the 1-based form above; omitted labels are fixed points.
Perm perm_from_cycle_string(const std::string& s, std::size_t n);

// Column j carries its 1 in row p[j], so (u * P)_j = u_{p(j)} and
// u * P^T scatters: entry i of u lands at position p(i).
BitMatrix perm_matrix(const Perm& p);
Perm perm_from_matrix(const BitMatrix& m);
bool is_perm_matrix(const BitMatrix& m);

// out[p[i]] = in[i]
template <typename T>
std::vector<T> scatter_by(const Perm& p, const std::vector<T>& in) {
  std::vector<T> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[p[i]] = in[i];
  return out;
}

// out[i] = in[p[i]]
template <typename T>
std::vector<T> gather_by(const Perm& p, const std::vector<T>& in) {
  std::vector<T> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[p[i]];
  return out;
}

}  // namespace ot
