#include "polarot/optimize.hpp"

#include <algorithm>
#include <stdexcept>

#include "polarot/autgroup.hpp"
#include "polarot/channel.hpp"
#include "polarot/construct.hpp"
#include "polarot/privacy.hpp"

namespace ot {

std::vector<double> pair_weights(const std::vector<double>& mi, const Perm& pi) {
  if (mi.size() != pi.size()) throw std::invalid_argument("size mismatch");
  std::vector<double> w(mi.size());
  for (std::size_t i = 0; i < mi.size(); ++i) w[i] = 0.5 * (mi[i] - mi[pi[i]]);
  return w;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> eligible_split(
    const std::vector<double>& mi) {
  const auto order = reliability_order(mi);
  const std::size_t half = mi.size() / 2;
  std::vector<std::size_t> top(order.begin(), order.begin() + half);
  std::vector<std::size_t> bottom(order.begin() + half, order.end());
  std::sort(top.begin(), top.end());
  std::sort(bottom.begin(), bottom.end());
  return {std::move(top), std::move(bottom)};
}

std::vector<std::size_t> cross_candidates(const std::vector<double>& mi, const Perm& pi) {
  const auto [top, bottom] = eligible_split(mi);
  std::vector<bool> in_bottom(mi.size(), false);
  for (std::size_t i : bottom) in_bottom[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i : top)
    if (in_bottom[pi[i]]) out.push_back(i);
  return out;
}

Selection inner_topk(const std::vector<double>& mi, const Perm& pi, std::size_t k) {
  if (k == 0) throw std::invalid_argument("selection needs k >= 1");
  auto cand = cross_candidates(mi, pi);
  if (cand.size() < k)
    throw std::runtime_error("selection infeasible: only " + std::to_string(cand.size()) +
                             " cross candidates for k=" + std::to_string(k));
  const auto w = pair_weights(mi, pi);
  std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
    if (w[a] != w[b]) return w[a] > w[b];
    return a < b;
  });
  cand.resize(k);
  std::sort(cand.begin(), cand.end());

  Selection sel;
  sel.good = cand;
  sel.bad.reserve(k);
  for (std::size_t i : cand) sel.bad.push_back(pi[i]);
  sel.score = selection_score(mi, sel.good, pi);
  sel.rate = sel.score / static_cast<double>(mi.size());
  return sel;
}

namespace {

bool try_sigma(const std::vector<double>& mi, unsigned m, std::size_t k, const Perm& sigma,
               OuterResult& best, bool& have) {
  const Perm pi = induced_index_perm(sigma, m);
  Selection sel;
  try {
    sel = inner_topk(mi, pi, k);
  } catch (const std::runtime_error&) {
    return false;
  }
  if (!have || sel.score > best.selection.score) {
    best = {sigma, pi, std::move(sel)};
    have = true;
  }
  return true;
}

Perm random_sigma(unsigned m, const CounterRng& rng, std::uint64_t& ctr, bool involution) {
  Perm s;
  if (!involution) {
    s = identity_perm(m);
    for (unsigned i = m; i > 1; --i) {
      const std::size_t j = rng.at(ctr++) % i;
      std::swap(s[i - 1], s[j]);
    }
    return s;
  }
  s.assign(m, m);
  std::vector<unsigned> free_pos;
  for (unsigned i = 0; i < m; ++i) free_pos.push_back(i);
  while (!free_pos.empty()) {
    const unsigned a = free_pos.front();
    free_pos.erase(free_pos.begin());
    const std::size_t pick = rng.at(ctr++) % (free_pos.size() + 1);
    if (pick == free_pos.size()) {
      s[a] = a;
    } else {
      const unsigned b = free_pos[pick];
      free_pos.erase(free_pos.begin() + static_cast<long>(pick));
      s[a] = b;
      s[b] = a;
    }
  }
  return s;
}

}  // namespace

OuterResult outer_search(const std::vector<double>& mi, unsigned m, std::size_t k,
                         SigmaSpace space, std::uint64_t seed, std::size_t samples) {
  if (mi.size() != (std::size_t{1} << m)) throw std::invalid_argument("profile size != 2^m");
  OuterResult best;
  bool have = false;

  const bool exhaustive =
      (space == SigmaSpace::all && m <= 8) || (space == SigmaSpace::involutions && m <= 12);
  if (exhaustive) {
    if (space == SigmaSpace::all) {
      Perm sigma = identity_perm(m);
      do {
        try_sigma(mi, m, k, sigma, best, have);
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    } else {
      for (const auto& sigma : enumerate_involutions(m)) try_sigma(mi, m, k, sigma, best, have);
    }
  } else {
    const CounterRng rng(seed);
    std::uint64_t ctr = 0;
    for (std::size_t s = 0; s < samples; ++s) {
      Perm sigma = random_sigma(m, rng, ctr, space == SigmaSpace::involutions);
      if (!try_sigma(mi, m, k, sigma, best, have)) continue;
      // local improvement: adjacent bit-position transpositions
      bool improved = true;
      while (improved) {
        improved = false;
        for (unsigned i = 0; i + 1 < m; ++i) {
          Perm cand = best.sigma;
          std::swap(cand[i], cand[i + 1]);
          if (space == SigmaSpace::involutions) {
            bool inv = true;
            for (unsigned j = 0; j < m && inv; ++j) inv = cand[cand[j]] == j;
            if (!inv) continue;
          }
          const double before = best.selection.score;
          if (try_sigma(mi, m, k, cand, best, have) && best.selection.score > before)
            improved = true;
        }
      }
    }
  }

  if (!have)
    throw std::runtime_error("selection infeasible: no sigma admits " + std::to_string(k) +
                             " cross pairs");
  return best;
}

}  // namespace ot
