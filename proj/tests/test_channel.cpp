#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polarot/channel.hpp"

using namespace ot;

TEST_CASE("counter rng is a pure function of seed and index") {
  CounterRng a(42), b(42), c(43);
  for (std::uint64_t i = 0; i < 64; ++i) {
    CHECK(a.at(i) == b.at(i));
    CHECK(a.at(i) == a.at(i));  // re-query, no hidden state
  }
  // different seeds should disagree somewhere early
  bool differs = false;
  for (std::uint64_t i = 0; i < 16; ++i) differs |= (a.at(i) != c.at(i));
  CHECK(differs);
}

TEST_CASE("unit draws stay inside the open interval") {
  CounterRng rng(7);
  double lo = 1.0, hi = 0.0;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const double u = rng.unit_at(i);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  // the stream should cover most of the interval
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("normal draws have standard moments") {
  CounterRng rng(12345);
  const std::size_t n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.normal_at(i);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("bits are balanced") {
  CounterRng rng(99);
  std::size_t ones = 0;
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) ones += rng.bit_at(i);
  const double frac = static_cast<double>(ones) / n;
  CHECK(frac > 0.49);
  CHECK(frac < 0.51);
}

TEST_CASE("substreams are decorrelated") {
  const std::uint64_t master = 2024;
  CounterRng s0(substream_seed(master, 0));
  CounterRng s1(substream_seed(master, 1));
  CHECK(s0.seed() != s1.seed());
  CHECK(s0.seed() != master);
  // crude independence check: matching outputs should be rare
  std::size_t hits = 0;
  for (std::uint64_t i = 0; i < 1024; ++i)
    if (s0.at(i) == s1.at(i)) ++hits;
  CHECK(hits == 0);
  // derivation is deterministic
  CHECK(substream_seed(master, 0) == substream_seed(master, 0));
}

TEST_CASE("bpsk maps bit 0 to +1 and bit 1 to -1") {
  const std::vector<double> s = bpsk_modulate({0, 1, 1, 0});
  REQUIRE(s.size() == 4);
  CHECK(s[0] == 1.0);
  CHECK(s[1] == -1.0);
  CHECK(s[2] == -1.0);
  CHECK(s[3] == 1.0);
}

TEST_CASE("awgn noise scales with 1/sqrt(snr)") {
  const std::vector<double> s = {1.0, -1.0, 1.0, 1.0};
  CounterRng rng(5);

  SUBCASE("huge snr reproduces the clean symbols exactly") {
    const auto y = awgn_transmit(s, 1e300, rng);
    REQUIRE(y.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(y[i] == s[i]);
  }

  SUBCASE("noise realization matches the rng stream at the given offset") {
    const double snr = 2.5;
    const auto y = awgn_transmit(s, snr, rng, 17);
    for (std::size_t i = 0; i < s.size(); ++i)
      CHECK(y[i] == doctest::Approx(s[i] + rng.normal_at(17 + i) / std::sqrt(snr)).epsilon(1e-15));
  }

  SUBCASE("non-positive snr is rejected") {
    CHECK_THROWS_AS(awgn_transmit(s, 0.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(awgn_transmit(s, -1.0, rng), std::invalid_argument);
  }
}

TEST_CASE("channel llr is 2*snr*y") {
  const std::vector<double> y = {0.5, -1.25, 3.0};
  const double snr = 1.7;
  const auto l = llr_from_observation(y, snr);
  REQUIRE(l.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(l[i] == doctest::Approx(2.0 * snr * y[i]).epsilon(1e-15));
  CHECK_THROWS_AS(llr_from_observation(y, 0.0), std::invalid_argument);
}
