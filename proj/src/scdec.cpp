#include "polarot/scdec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "polarot/channel.hpp"
#include "polarot/numeric.hpp"
#include "polarot/polar.hpp"

namespace ot {

double boxplus(double a, double b) {
  const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
  return sign * std::min(std::abs(a), std::abs(b)) +
         std::log1p(std::exp(-std::abs(a + b))) -
         std::log1p(std::exp(-std::abs(a - b)));
}

namespace {

struct ScScratch {
  const BitVec* fmask;
  const BitVec* fvals;
  BitVec* u;
  std::vector<double>* dec;
};

// L holds nn LLRs for this subtree; x receives the subtree's codeword.
// scratch has nn/2 free doubles for this level, children use the tail.
void sc_rec(const double* L, std::size_t nn, std::size_t base, std::uint8_t* x,
            double* scratch, ScScratch& g) {
  if (nn == 1) {
    const double l = *L;
    (*g.dec)[base] = l;
    std::uint8_t b;
    if ((*g.fmask)[base])
      b = (*g.fvals)[base];
    else
      b = l < 0.0 ? 1 : 0;
    (*g.u)[base] = b;
    x[0] = b;
    return;
  }
  const std::size_t h = nn / 2;
  for (std::size_t i = 0; i < h; ++i) scratch[i] = boxplus(L[i], L[i + h]);
  sc_rec(scratch, h, base, x, scratch + h, g);
  for (std::size_t i = 0; i < h; ++i)
    scratch[i] = L[i + h] + (x[i] ? -L[i] : L[i]);
  sc_rec(scratch, h, base + h, x + h, scratch + h, g);
  for (std::size_t i = 0; i < h; ++i) x[i] ^= x[i + h];
}

}  // namespace

ScResult sc_decode(const std::vector<double>& channel_llr, const BitVec& frozen_mask,
                   const BitVec& frozen_values) {
  const std::size_t n = channel_llr.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("length must be a power of two");
  if (frozen_mask.size() != n || frozen_values.size() != n)
    throw std::invalid_argument("mask/value length mismatch");
  std::vector<double> llr(n);
  for (std::size_t i = 0; i < n; ++i)
    llr[i] = std::clamp(channel_llr[i], -kLlrClip, kLlrClip);

  ScResult res;
  res.u.assign(n, 0);
  res.decision_llr.assign(n, 0.0);
  BitVec x(n, 0);
  std::vector<double> scratch(n);
  ScScratch g{&frozen_mask, &frozen_values, &res.u, &res.decision_llr};
  sc_rec(llr.data(), n, 0, x.data(), scratch.data(), g);
  return res;
}

std::vector<double> mc_bit_channel_mi(unsigned m, double snr, std::size_t trials,
                                      std::uint64_t seed, unsigned threads) {
  const std::size_t n = std::size_t{1} << m;
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  const unsigned workers = std::max(1u, threads);
  std::vector<std::vector<double>> partial(workers, std::vector<double>(n, 0.0));

  auto run = [&](unsigned w) {
    BitVec all_frozen(n, 1);
    for (std::size_t t = w; t < trials; t += workers) {
      const CounterRng bit_rng(substream_seed(seed, 2 * t));
      const CounterRng noise_rng(substream_seed(seed, 2 * t + 1));
      BitVec u(n);
      for (std::size_t i = 0; i < n; ++i) u[i] = bit_rng.bit_at(i);
      const auto y = awgn_transmit(bpsk_modulate(polar_encode(u)), snr, noise_rng);
      const auto res = sc_decode(llr_from_observation(y, snr), all_frozen, u);
      for (std::size_t i = 0; i < n; ++i) {
        const double t_i = (u[i] ? 1.0 : -1.0) * res.decision_llr[i];
        partial[w][i] += log1pexp(t_i) / 0.6931471805599453;
      }
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }

  std::vector<double> mi(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (unsigned w = 0; w < workers; ++w) acc += partial[w][i];
    mi[i] = 1.0 - acc / static_cast<double>(trials);
  }
  return mi;
}

double codeword_loglik(const std::vector<double>& y, const std::vector<double>& s,
                       double noise_var) {
  if (y.size() != s.size()) throw std::invalid_argument("length mismatch");
  if (noise_var <= 0.0) throw std::invalid_argument("noise variance must be positive");
  const double norm = -0.5 * std::log(2.0 * 3.14159265358979323846 * noise_var);
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - s[i];
    acc += norm - d * d / (2.0 * noise_var);
  }
  return acc;
}

std::vector<double> all_codeword_logliks(const std::vector<double>& y,
                                         const BitMatrix& code, double snr) {
  const std::size_t n = code.rows();
  if (n > 16) throw std::invalid_argument("exhaustive scan limited to n <= 16");
  if (y.size() != code.cols()) throw std::invalid_argument("length mismatch");
  std::vector<double> out(std::size_t{1} << n);
  for (std::size_t pattern = 0; pattern < out.size(); ++pattern) {
    BitVec u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = (pattern >> i) & 1u;
    out[pattern] = codeword_loglik(y, bpsk_modulate(vec_mat(u, code)), 1.0 / snr);
  }
  return out;
}

}  // namespace ot
