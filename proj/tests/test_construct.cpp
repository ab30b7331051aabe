#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "polarot/construct.hpp"

using namespace ot;

TEST_CASE("mutual information of the conditional-LLR gaussian") {
  CHECK(j_function(0.0) == 0.0);
  CHECK(j_function(1.0) == doctest::Approx(0.1607472198).epsilon(1e-9));
  CHECK(j_function(2.0) == doctest::Approx(0.4859441541).epsilon(1e-9));
  CHECK(j_function(3.0) == doctest::Approx(0.7599790080).epsilon(1e-9));
  CHECK(j_inverse(0.5) == doctest::Approx(2.0435393957).epsilon(1e-9));
  for (double i : {0.1, 0.35, 0.8, 0.99})
    CHECK(j_function(j_inverse(i)) == doctest::Approx(i).epsilon(1e-10));
}

TEST_CASE("snr and initial mutual information") {
  CHECK(snr_from_i0(0.5) == doctest::Approx(1.04401332).epsilon(1e-7));
  CHECK(i0_from_snr(snr_from_i0(0.73)) == doctest::Approx(0.73).epsilon(1e-9));
  CHECK(snr_from_db(0.0) == doctest::Approx(1.0));
  CHECK(snr_from_db(3.0) == doctest::Approx(1.9952623149688795).epsilon(1e-12));
  CHECK_THROWS_AS(i0_from_snr(-1.0), std::invalid_argument);
}

TEST_CASE("length-4 profile at the symmetric point") {
  const auto mi = ga_profile(2, snr_from_i0(0.5));
  const double expect[] = {0.078899497353, 0.449056667891, 0.550943332109, 0.921100502647};
  REQUIRE(mi.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(mi[i] == doctest::Approx(expect[i]).epsilon(1e-7));
  // the profile is symmetric when the channel sits at capacity one half
  CHECK(mi[0] + mi[3] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mi[1] + mi[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("length-8 profile at unit snr") {
  const auto mi = ga_profile(3, 1.0);
  const double expect[] = {0.006475372191, 0.135908662878, 0.197650380084, 0.659945160619,
                           0.295900525589, 0.765630361880, 0.835253449689, 0.990461981526};
  REQUIRE(mi.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(mi[i] == doctest::Approx(expect[i]).epsilon(1e-8));
  const std::vector<std::size_t> order{7, 6, 5, 3, 4, 2, 1, 0};
  CHECK(reliability_order(mi) == order);
}

TEST_CASE("length-16 profile at the symmetric point") {
  const auto mi = ga_profile(4, 1.04401332);
  const double expect[] = {0.0000932135, 0.0156765358, 0.0268311974, 0.2726037498,
                           0.0535861576, 0.3770378513, 0.4770984291, 0.8881301579,
                           0.1118698421, 0.5229015709, 0.6229621487, 0.9464138424,
                           0.7273962502, 0.9731688026, 0.9843234642, 0.9999067865};
  REQUIRE(mi.size() == 16);
  for (std::size_t i = 0; i < 16; ++i) CHECK(mi[i] == doctest::Approx(expect[i]).epsilon(2e-6));
  const std::vector<std::size_t> order{15, 14, 13, 11, 7, 12, 10, 9, 6, 5, 3, 8, 4, 2, 1, 0};
  CHECK(reliability_order(mi) == order);
}

TEST_CASE("bhattacharyya profile") {
  const auto z = z_profile(3, 1.0);
  const double expect[] = {0.974508269234, 0.706169130464, 0.591050619335, 0.129966377392,
                           0.441026845693, 0.063683009476, 0.036295815150, 0.000335462628};
  REQUIRE(z.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(z[i] == doctest::Approx(expect[i]).epsilon(1e-10));
}

TEST_CASE("threshold sets") {
  const std::vector<double> mi{0.01, 0.5, 0.999, 0.96};
  CHECK(good_set(mi, 0.05) == std::vector<std::size_t>{2, 3});
  CHECK(bad_set(mi, 0.05) == std::vector<std::size_t>{0});
  CHECK(default_gamma(2) <= 0.25);
  CHECK(default_gamma(std::size_t{1} << 16) >= 1e-6);
  CHECK(default_gamma(1024) == doctest::Approx(std::pow(2.0, -std::pow(1024.0, 0.3))));
}

TEST_CASE("reliability order breaks ties toward smaller indices") {
  const std::vector<double> mi{0.5, 0.9, 0.5, 0.9};
  CHECK(reliability_order(mi) == std::vector<std::size_t>{1, 3, 0, 2});
}
