#pragma once

#include <cstddef>
#include <vector>

#include "polarot/bitmat.hpp"
#include "polarot/perm.hpp"

namespace ot {

// Toeplitz family: out_j = XOR_i in_i * seed_{j-i+a-1} with a = |input|,
// seed length a + ell - 1. A uniform seed gives a universal family.
BitVec toeplitz_hash(const BitVec& seed, const BitVec& input, std::size_t ell);
std::size_t toeplitz_seed_bits(std::size_t input_bits, std::size_t ell);

double binary_entropy(double t);

// psi_v(t) = H_b(t) + (1-t) log2(v-1) + log2(t); zero at the uniform point
// t = 1/v.
double psi(unsigned v, double t);

// Smooth min-entropy correction Delta and the total key cost
// c = Delta + 2 log2(1/eps_p).
double smoothing_delta(double eps, double psi_mean, double hmax);
double key_cost(double eps, double psi_mean, double hmax, double eps_p);

// Leftover-hash key length floor(hmin - 2 log2(1/eps_p)), clamped at 0.
std::size_t lhl_key_length(double hmin, double eps_p);

// Asymmetry credit of a paired selection: sum over the set of
// (I_i - I_{pi(i)}) / 2, accumulated in ascending index order. The privacy
// budget and the optimizer both call this exact form.
double selection_score(const std::vector<double>& mi,
                       const std::vector<std::size_t>& good, const Perm& pi);

// Eavesdropper information ceiling for the published pair: the paired MI
// averages plus a gamma allowance per retained index.
double leakage_bound(const std::vector<double>& mi, const std::vector<std::size_t>& good,
                     const Perm& pi, double gamma);

// Reconciliation message length for correcting the chosen set:
// sum(1 - I_i) + sqrt(n V) * Phi^{-1}(1 - eps_sw).
double swc_length(const std::vector<double>& mi, const std::vector<std::size_t>& set,
                  double v, double eps_sw, std::size_t n);

// Net distillable key bits: max(0, selection_score - beta - c_eps).
double ell_net(const std::vector<double>& mi, const std::vector<std::size_t>& good,
               const Perm& pi, double beta, double c_eps);

}  // namespace ot
