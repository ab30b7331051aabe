#pragma once

#include <cstddef>
#include <vector>

#include "polarot/bitmat.hpp"
#include "polarot/perm.hpp"

namespace ot {

// Index permutation induced by relabeling bit positions: bit j of the input
// index becomes bit sigma[j] of the output index.
Perm induced_index_perm(const Perm& sigma, unsigned m);

// Recovers sigma from an induced index permutation; throws if pi does not
// act by bit relabeling.
Perm bit_perm_from_index_perm(const Perm& pi, unsigned m);

// All m! bit-relabeling index permutations, ordered lexicographically by
// sigma (so the identity comes first).
std::vector<Perm> enumerate_aut(unsigned m);

// The involutive sigmas only (products of disjoint transpositions), sorted
// lexicographically. These induce index permutations made of 2-cycles.
std::vector<Perm> enumerate_involutions(unsigned m);

// p is an automorphism of t when conjugating rows/columns by p leaves t
// unchanged (P^T T P = T).
bool is_automorphism(const Perm& p, const BitMatrix& t);
bool is_automorphism(const BitMatrix& p, const BitMatrix& t);

// Checks every one of the n! index permutations against the transform.
// Exponential; intended for m <= 3.
std::vector<Perm> brute_force_aut(unsigned m);

// Partial order on bit labels: i precedes j when every most-significant-side
// running bit count of i is dominated by j's. Left-swaps and 0->1 upgrades
// both move labels upward; comparable pairs order the synthetic channels for
// every symmetric channel.
bool upo_leq(std::size_t i, std::size_t j, unsigned m);
bool upo_comparable(std::size_t i, std::size_t j, unsigned m);

}  // namespace ot
