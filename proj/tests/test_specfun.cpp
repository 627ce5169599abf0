#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "ggc/specfun.hpp"

using namespace ggc;

TEST_CASE("log_gamma at known points") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(log_gamma(2.0)) < 1e-15);
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-15));
  CHECK(log_gamma(10.0) == doctest::Approx(std::log(362880.0)).epsilon(1e-15));
}

TEST_CASE("log_gamma tracks lgamma over a wide range") {
  for (double x = 1e-6; x < 1e6; x *= 1.37) {
    const double ref = std::lgamma(x);
    CHECK(std::abs(log_gamma(x) - ref) <= 1e-14 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("log_gamma rejects bad input") {
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("log_beta") {
  CHECK(log_beta(0.5, 0.5) == doctest::Approx(std::log(std::numbers::pi)).epsilon(1e-14));
  CHECK(log_beta(2.0, 3.0) == doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-14));
}

TEST_CASE("bessel_i small arguments") {
  CHECK(bessel_i(0.0, 0.0) == 1.0);
  CHECK(bessel_i(1.0, 0.0) == 0.0);
  CHECK(bessel_i(0.0, 1.0) == doctest::Approx(1.2660658777520082).epsilon(1e-14));
  CHECK(bessel_i(1.0, 1.0) == doctest::Approx(0.5651591039924851).epsilon(1e-14));
}

TEST_CASE("bessel_i against mpmath besseli") {
  struct Case {
    double order, x, value;
  };
  // mpmath.besseli at 30 digits
  const Case cases[] = {
      {0.5, 0.3, 0.44360422491882005615},  {1.5, 20.0, 41115758.958807482034},
      {2.0, 50.0, 2.8164306402451940548e+20}, {0.25, 100.0, 1.0734145166453237066e+42},
      {3.0, 5.0, 10.331150169151138387},    {0.0, 15.0, 339649.37329791387952},
      {0.0, 16.0, 893446.22792010501707},   {7.5, 30.0, 302785501061.83343186},
  };
  for (const auto& c : cases) {
    CAPTURE(c.order);
    CAPTURE(c.x);
    CHECK(bessel_i(c.order, c.x) == doctest::Approx(c.value).epsilon(1e-12));
  }
}

TEST_CASE("bessel_i half-integer order has a closed form") {
  // I_{1/2}(x) = sqrt(2/(πx)) sinh x
  for (double x : {0.01, 0.7, 3.0, 14.9, 15.1, 40.0}) {
    const double ref = std::sqrt(2.0 / (std::numbers::pi * x)) * std::sinh(x);
    CHECK(bessel_i(0.5, x) == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("bessel_i domain") {
  CHECK_THROWS_AS(bessel_i(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_i(1.0, -1.0), std::domain_error);
}
