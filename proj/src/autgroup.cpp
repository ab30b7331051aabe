#include "polarot/autgroup.hpp"

#include <algorithm>
#include <stdexcept>

#include "polarot/polar.hpp"

namespace ot {

Perm induced_index_perm(const Perm& sigma, unsigned m) {
  if (sigma.size() != m) throw std::invalid_argument("sigma size != m");
  if (!is_permutation(sigma)) throw std::invalid_argument("sigma is not a permutation");
  const std::size_t n = std::size_t{1} << m;
  Perm pi(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t out = 0;
    for (unsigned j = 0; j < m; ++j)
      if ((i >> j) & 1u) out |= std::size_t{1} << sigma[j];
    pi[i] = out;
  }
  return pi;
}

Perm bit_perm_from_index_perm(const Perm& pi, unsigned m) {
  const std::size_t n = std::size_t{1} << m;
  if (pi.size() != n) throw std::invalid_argument("pi size != 2^m");
  Perm sigma(m);
  for (unsigned j = 0; j < m; ++j) {
    const std::size_t img = pi[std::size_t{1} << j];
    if (img == 0 || (img & (img - 1)) != 0)
      throw std::invalid_argument("index permutation does not relabel bits");
    unsigned b = 0;
    while ((img >> b) != 1) ++b;
    sigma[j] = b;
  }
  if (!is_permutation(sigma) || induced_index_perm(sigma, m) != pi)
    throw std::invalid_argument("index permutation does not relabel bits");
  return sigma;
}

std::vector<Perm> enumerate_aut(unsigned m) {
  Perm sigma = identity_perm(m);
  std::vector<Perm> out;
  do {
    out.push_back(induced_index_perm(sigma, m));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::vector<Perm> enumerate_involutions(unsigned m) {
  std::vector<Perm> sigmas;
  Perm cur(m, m);  // m marks "unassigned"
  auto rec = [&](auto&& self, unsigned depth) -> void {
    if (depth == m) {
      sigmas.push_back(cur);
      return;
    }
    if (cur[depth] != m) {
      self(self, depth + 1);
      return;
    }
    cur[depth] = depth;
    self(self, depth + 1);
    cur[depth] = m;
    for (unsigned b = depth + 1; b < m; ++b) {
      if (cur[b] != m) continue;
      cur[depth] = b;
      cur[b] = depth;
      self(self, depth + 1);
      cur[depth] = m;
      cur[b] = m;
    }
  };
  rec(rec, 0);
  std::sort(sigmas.begin(), sigmas.end());
  return sigmas;
}

bool is_automorphism(const Perm& p, const BitMatrix& t) {
  if (p.size() != t.rows() || t.rows() != t.cols()) return false;
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j)
      if (t.get(p[i], p[j]) != t.get(i, j)) return false;
  return true;
}

bool is_automorphism(const BitMatrix& p, const BitMatrix& t) {
  if (!is_perm_matrix(p)) return false;
  return is_automorphism(perm_from_matrix(p), t);
}

std::vector<Perm> brute_force_aut(unsigned m) {
  if (m > 3) throw std::invalid_argument("factorial search limited to m <= 3");
  const BitMatrix t = build_transform(m);
  const std::size_t n = std::size_t{1} << m;
  std::vector<Perm> found;
  Perm p = identity_perm(n);
  do {
    if (is_automorphism(p, t)) found.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return found;
}

bool upo_leq(std::size_t i, std::size_t j, unsigned m) {
  std::size_t si = 0, sj = 0;
  for (unsigned t = m; t-- > 0;) {
    si += (i >> t) & 1u;
    sj += (j >> t) & 1u;
    if (si > sj) return false;
  }
  return true;
}

bool upo_comparable(std::size_t i, std::size_t j, unsigned m) {
  return upo_leq(i, j, m) || upo_leq(j, i, m);
}

}  // namespace ot
