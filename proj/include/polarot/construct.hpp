#pragma once

#include <cstddef>
#include <vector>

namespace ot {

// Mutual information of a BPSK-AWGN LLR that is N(sigma^2/2, sigma^2);
// strictly increasing from J(0)=0 with J(inf)=1.
double j_function(double sigma);
double j_inverse(double i);

// Channel snr here means: unit symbols, noise variance 1/snr, so the channel
// LLR is N(2 snr, 4 snr) given a zero bit and I0 = J(2 sqrt(snr)).
double i0_from_snr(double snr);
double snr_from_i0(double i0);
double snr_from_db(double snr_db);

// Per-index synthetic-channel MI under the Gaussian approximation. The first
// polarization split corresponds to the most significant index bit, matching
// the butterfly's stage order.
std::vector<double> ga_profile(unsigned m, double snr);

// Bhattacharyya parameters via the exact-minus / exact-plus recursion
// (upper bound at the minus node), from Z0 = exp(-snr).
std::vector<double> z_profile(unsigned m, double snr);

// Polarization threshold default: 2^(-n^0.3), clipped to [1e-6, 0.25].
double default_gamma(std::size_t n);

std::vector<std::size_t> good_set(const std::vector<double>& mi, double gamma);
std::vector<std::size_t> bad_set(const std::vector<double>& mi, double gamma);

// Indices sorted by decreasing MI, ties toward the smaller index.
std::vector<std::size_t> reliability_order(const std::vector<double>& mi);

}  // namespace ot
