#pragma once

#include <cstdint>
#include <vector>

#include "polarot/bitmat.hpp"

namespace ot {

// Exact check-node combination: ln((1+e^{a+b})/(e^a+e^b)) without
// the min-sum approximation.
double boxplus(double a, double b);

// Channel LLRs are clipped to this magnitude before decoding.
inline constexpr double kLlrClip = 40.0;

struct ScResult {
  BitVec u;                          // decisions (frozen positions forced)
  std::vector<double> decision_llr;  // LLR observed when each bit was decided
};

// Successive-cancellation decode against the plain transform. Zero LLR at a
// free position decides 0.
ScResult sc_decode(const std::vector<double>& channel_llr, const BitVec& frozen_mask,
                   const BitVec& frozen_values);

// Monte-Carlo estimate of each synthetic channel's MI: decode with every
// decision corrected to the transmitted bit and average the soft reliability
// of the decision LLRs. Trials split across workers by substream.
std::vector<double> mc_bit_channel_mi(unsigned m, double snr, std::size_t trials,
                                      std::uint64_t seed, unsigned threads = 1);

// Gaussian log-likelihood of observing y when s was sent (per-symbol noise
// variance noise_var), including the normalization constant.
double codeword_loglik(const std::vector<double>& y, const std::vector<double>& s,
                       double noise_var);

// Log-likelihood of every input pattern u in [0, 2^n) against the code
// x = u * code. Exponential; guarded to n <= 16.
std::vector<double> all_codeword_logliks(const std::vector<double>& y,
                                         const BitMatrix& code, double snr);

}  // namespace ot
