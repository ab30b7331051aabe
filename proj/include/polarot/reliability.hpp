#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ot {

// Exact binomial upper confidence limit: the unique u with
// Pr[Bin(trials, u) <= errors] = delta (1 when errors == trials).
double cp_upper(std::uint64_t errors, std::uint64_t trials, double delta);

struct McHashResult {
  std::uint64_t trials = 0;
  std::uint64_t block_errors = 0;  // trials where any hash-input bit was wrong
  std::uint64_t bit_errors = 0;    // wrong hash-input bits, summed
  std::size_t hash_input_bits = 0;

  double p_hat() const {
    return trials ? static_cast<double>(block_errors) / static_cast<double>(trials) : 0.0;
  }
  double bit_error_rate() const {
    const auto denom = static_cast<double>(trials) * static_cast<double>(hash_input_bits);
    return denom > 0.0 ? static_cast<double>(bit_errors) / denom : 0.0;
  }
};

// End-to-end encode/noise/decode trials: uniform bits ride hash_input and
// rand_set, every other position is frozen to zero, and the decoder frees
// exactly those positions. Deterministic in (seed); trials may be split
// across threads because each trial has its own substream.
McHashResult mc_hash_input_error(unsigned m, double snr,
                                 const std::vector<std::size_t>& hash_input,
                                 const std::vector<std::size_t>& rand_set,
                                 std::size_t trials, std::uint64_t seed,
                                 unsigned threads = 1);

// Bhattacharyya union bound over the prefix slice: sums z over
// (hash_input U rand_set) restricted to indices <= max(hash_input).
double union_bound_prefix(const std::vector<double>& z,
                          const std::vector<std::size_t>& hash_input,
                          const std::vector<std::size_t>& rand_set);

}  // namespace ot
