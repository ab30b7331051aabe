#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "polarot/perm.hpp"

namespace ot {

// A cross-cut selection: good[i] pairs with bad[i] = pi(good[i]); the two
// index sets trade decodability between the two decoder views.
struct Selection {
  std::vector<std::size_t> good;  // ascending
  std::vector<std::size_t> bad;   // pi images, aligned with good
  double score = 0.0;             // summed pair asymmetry
  double rate = 0.0;              // score / n
};

// w_i = (I_i - I_{pi(i)}) / 2 for every index.
std::vector<double> pair_weights(const std::vector<double>& mi, const Perm& pi);

// The n/2 highest-MI indices (ties toward the smaller index) and the rest,
// both ascending.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> eligible_split(
    const std::vector<double>& mi);

// Indices in the eligible top half whose pi image lands in the bottom half.
std::vector<std::size_t> cross_candidates(const std::vector<double>& mi, const Perm& pi);

// Picks the k largest-weight candidates (ties toward the smaller index).
// Throws when fewer than k candidates exist.
Selection inner_topk(const std::vector<double>& mi, const Perm& pi, std::size_t k);

struct OuterResult {
  Perm sigma;  // bit-relabeling achieving the best selection
  Perm pi;     // its induced index permutation
  Selection selection;
};

enum class SigmaSpace {
  all,          // every bit relabeling
  involutions,  // relabelings that pair or fix bit positions
};

// Scans sigma candidates and keeps the best-scoring feasible selection,
// first-found on ties (candidates are generated in lexicographic order).
// Exhaustive up to m <= 8 (all) / m <= 12 (involutions); beyond that, seeded
// sampling with adjacent-transposition hill climbing.
OuterResult outer_search(const std::vector<double>& mi, unsigned m, std::size_t k,
                         SigmaSpace space, std::uint64_t seed = 0,
                         std::size_t samples = 2000);

}  // namespace ot
