#include "polarot/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "polarot/channel.hpp"
#include "polarot/numeric.hpp"
#include "polarot/polar.hpp"
#include "polarot/scdec.hpp"

namespace ot {

double cp_upper(std::uint64_t errors, std::uint64_t trials, double delta) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  if (errors > trials) throw std::invalid_argument("errors exceed trials");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
  if (errors == trials) return 1.0;
  if (errors == 0) return 1.0 - std::pow(delta, 1.0 / static_cast<double>(trials));

  // Pr[Bin(trials, u) <= errors] = 1 - I_u(errors+1, trials-errors); solve
  // for the u making that tail equal delta. The incomplete beta is monotone
  // increasing in u, so bisection is safe.
  const double a = static_cast<double>(errors) + 1.0;
  const double b = static_cast<double>(trials - errors);
  const double target = 1.0 - delta;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (betainc_reg(a, b, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

McHashResult mc_hash_input_error(unsigned m, double snr,
                                 const std::vector<std::size_t>& hash_input,
                                 const std::vector<std::size_t>& rand_set,
                                 std::size_t trials, std::uint64_t seed,
                                 unsigned threads) {
  const std::size_t n = std::size_t{1} << m;
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  if (hash_input.empty()) throw std::invalid_argument("hash-input set is empty");

  BitVec free_mask(n, 0);
  for (std::size_t i : hash_input) {
    if (i >= n) throw std::invalid_argument("hash-input index out of range");
    free_mask[i] = 1;
  }
  for (std::size_t i : rand_set) {
    if (i >= n) throw std::invalid_argument("random-set index out of range");
    if (free_mask[i]) throw std::invalid_argument("hash-input and random sets must be disjoint");
    free_mask[i] = 1;
  }
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < n; ++i)
    if (free_mask[i]) free_idx.push_back(i);

  BitVec frozen_mask(n, 1);
  for (std::size_t i : free_idx) frozen_mask[i] = 0;

  const unsigned workers = std::max(1u, threads);
  std::vector<McHashResult> partial(workers);

  auto run = [&](unsigned w) {
    const BitVec frozen_values(n, 0);
    for (std::size_t t = w; t < trials; t += workers) {
      const CounterRng bit_rng(substream_seed(seed, 2 * t));
      const CounterRng noise_rng(substream_seed(seed, 2 * t + 1));
      BitVec u(n, 0);
      for (std::size_t j = 0; j < free_idx.size(); ++j) u[free_idx[j]] = bit_rng.bit_at(j);
      const auto y = awgn_transmit(bpsk_modulate(polar_encode(u)), snr, noise_rng);
      const auto res = sc_decode(llr_from_observation(y, snr), frozen_mask, frozen_values);
      std::uint64_t wrong = 0;
      for (std::size_t i : hash_input) wrong += res.u[i] != u[i];
      partial[w].bit_errors += wrong;
      partial[w].block_errors += wrong != 0;
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }

  McHashResult out;
  out.trials = trials;
  out.hash_input_bits = hash_input.size();
  for (const auto& p : partial) {
    out.block_errors += p.block_errors;
    out.bit_errors += p.bit_errors;
  }
  return out;
}

double union_bound_prefix(const std::vector<double>& z,
                          const std::vector<std::size_t>& hash_input,
                          const std::vector<std::size_t>& rand_set) {
  if (hash_input.empty()) return 0.0;
  const std::size_t cutoff = *std::max_element(hash_input.begin(), hash_input.end());
  double acc = 0.0;
  for (std::size_t i : hash_input) {
    if (i >= z.size()) throw std::invalid_argument("index out of range");
    acc += z[i];
  }
  for (std::size_t i : rand_set) {
    if (i >= z.size()) throw std::invalid_argument("index out of range");
    if (i <= cutoff) acc += z[i];
  }
  return acc;
}

}  // namespace ot
