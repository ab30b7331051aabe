#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polarot/channel.hpp"
#include "polarot/reliability.hpp"

using namespace ot;

TEST_CASE("clopper-pearson upper limit: frozen values") {
  // k = 0 has the closed form 1 - delta^(1/M)
  CHECK(cp_upper(0, 100, 0.05) == doctest::Approx(2.9513049607e-2).epsilon(1e-8));
  CHECK(cp_upper(0, 100, 0.05) ==
        doctest::Approx(1.0 - std::pow(0.05, 0.01)).epsilon(1e-12));
  CHECK(cp_upper(3, 50, 0.01) == doctest::Approx(1.8720925617e-1).epsilon(1e-9));
  CHECK(cp_upper(10, 20, 0.05) == doctest::Approx(6.9804608871e-1).epsilon(1e-9));
  CHECK(cp_upper(1, 10, 0.10) == doctest::Approx(3.3684772331e-1).epsilon(1e-9));
  CHECK(cp_upper(1000, 1000000, 1e-6) == doctest::Approx(1.1585610896e-3).epsilon(1e-8));
  CHECK(cp_upper(20, 20, 0.05) == 1.0);
}

TEST_CASE("clopper-pearson is monotone in the error count") {
  double prev = 0.0;
  for (std::uint64_t k = 0; k <= 100; ++k) {
    const double u = cp_upper(k, 100, 0.05);
    CHECK(u > prev);
    CHECK(u <= 1.0);
    prev = u;
  }
}

TEST_CASE("clopper-pearson input validation") {
  CHECK_THROWS_AS(cp_upper(11, 10, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(cp_upper(0, 0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(cp_upper(0, 10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(cp_upper(0, 10, 1.0), std::invalid_argument);
}

TEST_CASE("clopper-pearson covers the true rate") {
  // 500 simulated experiments per rate; at delta = 5% the bound may fall
  // below the truth in at most ~5% of them (the limit is conservative, so
  // 45 failures out of 500 leaves wide margin)
  const std::uint64_t experiments = 500, M = 10000;
  for (double p : {1e-3, 1e-2}) {
    std::uint64_t failures = 0;
    for (std::uint64_t e = 0; e < experiments; ++e) {
      CounterRng rng(substream_seed(808, e + (p < 5e-3 ? 0 : 100000)));
      std::uint64_t k = 0;
      for (std::uint64_t i = 0; i < M; ++i)
        if (rng.unit_at(i) < p) ++k;
      if (cp_upper(k, M, 0.05) < p) ++failures;
    }
    CHECK(failures <= 45);
  }
}

TEST_CASE("hash-input error trials") {
  const unsigned m = 4;
  const std::vector<std::size_t> hash_input = {4, 6};
  const std::vector<std::size_t> rand_set = {8, 10};

  SUBCASE("clean channel never errs") {
    const McHashResult r = mc_hash_input_error(m, 1e6, hash_input, rand_set, 200, 3);
    CHECK(r.trials == 200);
    CHECK(r.block_errors == 0);
    CHECK(r.bit_errors == 0);
    CHECK(r.hash_input_bits == 2);
    CHECK(r.p_hat() == 0.0);
  }

  SUBCASE("thread count does not change the tally") {
    const McHashResult a = mc_hash_input_error(m, 1.0, hash_input, rand_set, 500, 9, 1);
    const McHashResult b = mc_hash_input_error(m, 1.0, hash_input, rand_set, 500, 9, 4);
    CHECK(a.block_errors == b.block_errors);
    CHECK(a.bit_errors == b.bit_errors);
    // noisy channel with weak indices: some errors must appear
    CHECK(a.block_errors > 0);
    CHECK(a.bit_errors >= a.block_errors);
    CHECK(a.p_hat() <= 1.0);
  }

  SUBCASE("set validation") {
    CHECK_THROWS_AS(mc_hash_input_error(m, 1.0, {4}, {4}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(mc_hash_input_error(m, 1.0, {16}, {}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(mc_hash_input_error(m, 1.0, {}, {4}, 10, 1), std::invalid_argument);
  }
}

TEST_CASE("prefix union bound") {
  const std::vector<double> z = {0.5, 0.25, 0.125, 0.0625};
  // cutoff = max(hash_input) = 3: adds z[1] + z[3] + z[0]
  CHECK(union_bound_prefix(z, {1, 3}, {0}) == doctest::Approx(0.8125).epsilon(1e-15));
  // rand indices past the cutoff are excluded: cutoff = 1 keeps only z[0]
  CHECK(union_bound_prefix(z, {1}, {0, 3}) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(union_bound_prefix(z, {}, {0, 1}) == 0.0);
  CHECK_THROWS_AS(union_bound_prefix(z, {4}, {}), std::invalid_argument);
  CHECK_THROWS_AS(union_bound_prefix(z, {1}, {9}), std::invalid_argument);
}
