#pragma once

#include <cstdint>
#include <vector>

#include "polarot/bitmat.hpp"

namespace ot {

// Counter-mode splitmix generator: output i is a pure function of (seed, i),
// so any index range can be drawn independently and in parallel.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t at(std::uint64_t i) const;
  double unit_at(std::uint64_t i) const;    // uniform on (0,1)
  double normal_at(std::uint64_t i) const;  // standard normal (Box-Muller pair)
  std::uint8_t bit_at(std::uint64_t i) const { return static_cast<std::uint8_t>(at(i) & 1u); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// Derives a decorrelated child seed for worker/trial substreams.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index);

// BPSK map: bit 0 -> +1.0, bit 1 -> -1.0.
std::vector<double> bpsk_modulate(const BitVec& x);

// y_i = s_i + z_i / sqrt(snr); noise draws come from rng indices
// offset .. offset+n-1.
std::vector<double> awgn_transmit(const std::vector<double>& s, double snr,
                                  const CounterRng& rng, std::uint64_t offset = 0);

// Channel LLR for unit-symbol BPSK with noise variance 1/snr: 2*snr*y.
std::vector<double> llr_from_observation(const std::vector<double>& y, double snr);

}  // namespace ot
