#include "polarot/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ot {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kSubstreamSalt = 0xd1b54a32d192ed03ULL;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

std::uint64_t CounterRng::at(std::uint64_t i) const {
  return mix64(seed_ + (i + 1) * kGamma);
}

double CounterRng::unit_at(std::uint64_t i) const {
  // 53 mantissa bits, shifted into the open interval
  return (static_cast<double>(at(i) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal_at(std::uint64_t i) const {
  const std::uint64_t pair = i >> 1;
  const double u1 = unit_at(2 * pair);
  const double u2 = unit_at(2 * pair + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  return (i & 1) ? r * std::sin(theta) : r * std::cos(theta);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + (index + 1) * kSubstreamSalt);
}

std::vector<double> bpsk_modulate(const BitVec& x) {
  std::vector<double> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? -1.0 : 1.0;
  return s;
}

std::vector<double> awgn_transmit(const std::vector<double>& s, double snr,
                                  const CounterRng& rng, std::uint64_t offset) {
  if (snr <= 0.0) throw std::invalid_argument("snr must be positive");
  const double noise_std = 1.0 / std::sqrt(snr);
  std::vector<double> y(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    y[i] = s[i] + noise_std * rng.normal_at(offset + i);
  return y;
}

std::vector<double> llr_from_observation(const std::vector<double>& y, double snr) {
  if (snr <= 0.0) throw std::invalid_argument("snr must be positive");
  std::vector<double> l(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) l[i] = 2.0 * snr * y[i];
  return l;
}

}  // namespace ot
