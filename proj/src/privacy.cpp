#include "polarot/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polarot/numeric.hpp"

namespace ot {

BitVec toeplitz_hash(const BitVec& seed, const BitVec& input, std::size_t ell) {
  const std::size_t a = input.size();
  if (ell == 0) return {};
  if (seed.size() != toeplitz_seed_bits(a, ell))
    throw std::invalid_argument("seed length mismatch");
  BitVec out(ell, 0);
  for (std::size_t j = 0; j < ell; ++j) {
    std::uint8_t acc = 0;
    for (std::size_t i = 0; i < a; ++i)
      acc ^= static_cast<std::uint8_t>(input[i] & seed[j - i + a - 1]);
    out[j] = acc;
  }
  return out;
}

std::size_t toeplitz_seed_bits(std::size_t input_bits, std::size_t ell) {
  if (ell == 0) return 0;
  return input_bits + ell - 1;
}

double binary_entropy(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return -(t * std::log2(t) + (1.0 - t) * std::log2(1.0 - t));
}

double psi(unsigned v, double t) {
  if (v < 2) throw std::invalid_argument("alphabet needs v >= 2");
  if (t <= 0.0 || t > 1.0) throw std::invalid_argument("t must lie in (0,1]");
  const double side = v > 2 ? (1.0 - t) * std::log2(static_cast<double>(v - 1)) : 0.0;
  return binary_entropy(t) + side + std::log2(t);
}

double smoothing_delta(double eps, double psi_mean, double hmax) {
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("eps must lie in (0,1)");
  return psi_mean - std::log2(1.0 - eps) + eps / (1.0 - eps) * hmax;
}

double key_cost(double eps, double psi_mean, double hmax, double eps_p) {
  if (eps_p <= 0.0 || eps_p >= 1.0) throw std::invalid_argument("eps_p must lie in (0,1)");
  return smoothing_delta(eps, psi_mean, hmax) + 2.0 * std::log2(1.0 / eps_p);
}

std::size_t lhl_key_length(double hmin, double eps_p) {
  if (eps_p <= 0.0 || eps_p >= 1.0) throw std::invalid_argument("eps_p must lie in (0,1)");
  const double ell = std::floor(hmin - 2.0 * std::log2(1.0 / eps_p));
  return ell <= 0.0 ? 0 : static_cast<std::size_t>(ell);
}

double selection_score(const std::vector<double>& mi,
                       const std::vector<std::size_t>& good, const Perm& pi) {
  std::vector<std::size_t> sorted = good;
  std::sort(sorted.begin(), sorted.end());
  double s = 0.0;
  for (std::size_t i : sorted) s += 0.5 * (mi[i] - mi[pi[i]]);
  return s;
}

double leakage_bound(const std::vector<double>& mi, const std::vector<std::size_t>& good,
                     const Perm& pi, double gamma) {
  std::vector<std::size_t> sorted = good;
  std::sort(sorted.begin(), sorted.end());
  double s = 0.0;
  for (std::size_t i : sorted) s += 0.5 * (mi[i] + mi[pi[i]]);
  return s + gamma * static_cast<double>(sorted.size());
}

double swc_length(const std::vector<double>& mi, const std::vector<std::size_t>& set,
                  double v, double eps_sw, std::size_t n) {
  double s = 0.0;
  for (std::size_t i : set) s += 1.0 - mi[i];
  double beta = 0.0;
  if (v > 0.0) beta = std::sqrt(static_cast<double>(n) * v) * norm_quantile(1.0 - eps_sw);
  return s + beta;
}

double ell_net(const std::vector<double>& mi, const std::vector<std::size_t>& good,
               const Perm& pi, double beta, double c_eps) {
  const double s = selection_score(mi, good, pi);
  return std::max(0.0, s - beta - c_eps);
}

}  // namespace ot
