#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "polarot/numeric.hpp"

using namespace ot;

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

TEST_CASE("gauss-hermite moments") {
  for (const std::size_t n : {5ul, 21ul, 96ul}) {
    const Quadrature q = gauss_hermite(n);
    REQUIRE(q.nodes.size() == n);
    double w = 0.0, wx = 0.0, wx2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w += q.weights[i];
      wx += q.weights[i] * q.nodes[i];
      wx2 += q.weights[i] * q.nodes[i] * q.nodes[i];
    }
    CHECK(w == doctest::Approx(kSqrtPi).epsilon(1e-12));
    CHECK(std::abs(wx) < 1e-12);
    CHECK(wx2 == doctest::Approx(0.5 * kSqrtPi).epsilon(1e-10));
  }
}

TEST_CASE("gauss-hermite nodes are symmetric and sorted") {
  const Quadrature q = gauss_hermite(32);
  for (std::size_t i = 0; i + 1 < 32; ++i) CHECK(q.nodes[i] < q.nodes[i + 1]);
  for (std::size_t i = 0; i < 32; ++i) {
    CHECK(q.nodes[i] == doctest::Approx(-q.nodes[31 - i]).epsilon(1e-12));
    CHECK(q.weights[i] == doctest::Approx(q.weights[31 - i]).epsilon(1e-12));
  }
}

TEST_CASE("normal quantile") {
  CHECK(std::abs(norm_quantile(0.5)) < 1e-14);
  CHECK(norm_quantile(0.95) == doctest::Approx(1.6448536270).epsilon(1e-9));
  CHECK(norm_quantile(0.975) == doctest::Approx(1.9599639845).epsilon(1e-9));
  CHECK(norm_quantile(0.999) == doctest::Approx(3.0902323062).epsilon(1e-9));
  CHECK(norm_quantile(0.9999) == doctest::Approx(3.7190164855).epsilon(1e-9));
  CHECK(norm_quantile(0.05) == doctest::Approx(-1.6448536270).epsilon(1e-9));
  CHECK(norm_quantile(0.01) == doctest::Approx(-2.3263478740).epsilon(1e-9));
  CHECK_THROWS_AS(norm_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(norm_quantile(1.0), std::invalid_argument);
}

TEST_CASE("regularized incomplete beta") {
  for (double x = 0.05; x < 1.0; x += 0.1)
    CHECK(betainc_reg(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-14));

  // binomial upper tail: Pr[Bin(6, 0.3) >= 2] = I_0.3(2, 5)
  CHECK(betainc_reg(2.0, 5.0, 0.3) == doctest::Approx(0.579825).epsilon(1e-12));

  CHECK(betainc_reg(5.0, 5.0, 0.5) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(betainc_reg(3.0, 7.0, 0.0) == 0.0);
  CHECK(betainc_reg(3.0, 7.0, 1.0) == 1.0);

  for (double x : {0.1, 0.37, 0.62, 0.93})
    CHECK(betainc_reg(2.5, 4.0, x) ==
          doctest::Approx(1.0 - betainc_reg(4.0, 2.5, 1.0 - x)).epsilon(1e-13));
}

TEST_CASE("log1pexp") {
  CHECK(log1pexp(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(log1pexp(800.0) == doctest::Approx(800.0).epsilon(1e-12));
  CHECK(log1pexp(-800.0) < 1e-300);
  CHECK(log1pexp(-3.0) == doctest::Approx(std::log1p(std::exp(-3.0))).epsilon(1e-14));
}
