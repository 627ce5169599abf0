#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "ggc/quadrature.hpp"
#include "ggc/specfun.hpp"

using namespace ggc;

TEST_CASE("integrate_unit basics") {
  CHECK(integrate_unit([](double) { return 1.0; }, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_unit([](double u) { return 1.0 / std::sqrt(u); }, -0.5, 0.0) ==
        doctest::Approx(2.0).epsilon(1e-10));
  // complement argument keeps 1-u exact near u = 1
  CHECK(integrate_unit([](double u, double c) { return 1.0 / std::sqrt(u * c); },
                       EndpointExponents{-0.5, -0.5}) ==
        doctest::Approx(std::numbers::pi).epsilon(1e-10));
}

TEST_CASE("integrate_unit reproduces Beta integrals with strong singularities") {
  for (double a : {-0.9, -0.5, 0.0, 1.5, 4.0}) {
    for (double b : {-0.75, 0.0, 2.0}) {
      const double v = integrate_unit(
          [&](double u, double c) { return std::pow(u, a) * std::pow(c, b); },
          EndpointExponents{a, b});
      CAPTURE(a);
      CAPTURE(b);
      CHECK(v == doctest::Approx(std::exp(log_beta(a + 1.0, b + 1.0))).epsilon(1e-9));
    }
  }
}

TEST_CASE("integrate_unit errors") {
  CHECK_THROWS_AS(integrate_unit([](double) { return 1.0; }, -1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(integrate_unit([](double) { return std::numeric_limits<double>::infinity(); }, 0.0, 0.0),
                  QuadratureError);
  QuadratureConfig tiny;
  tiny.max_subdivisions = 4;
  CHECK_THROWS_AS(integrate_unit([](double u) { return std::sin(200.0 * u); }, 0.0, 0.0, tiny),
                  QuadratureError);
}

TEST_CASE("integrate_halfline") {
  CHECK(integrate_halfline([](double x) { return std::exp(-x); }) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(integrate_halfline([](double x) { return x * std::exp(-x); }) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(integrate_halfline([](double x) { return std::exp(-x * x); }) ==
        doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-10));
  // x^{-1/2} e^{-x} = Γ(1/2)
  CHECK(integrate_halfline([](double x) { return std::exp(-x) / std::sqrt(x); }, {}, -0.5) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-10));
  // slow and fast scales
  CHECK(integrate_halfline([](double x) { return 1e-3 * std::exp(-1e-3 * x); }) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(integrate_halfline([](double x) { return 1e3 * std::exp(-1e3 * x); }) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integrate_halfline without decay") {
  CHECK_THROWS_AS(integrate_halfline([](double) { return 1.0; }), QuadratureError);
  CHECK(integrate_halfline([](double) { return 0.0; }) == 0.0);
}

TEST_CASE("integrate_cube") {
  const std::array<EndpointExponents, 2> flat{};
  CHECK(integrate_cube([](auto, auto) { return 1.0; }, 2, flat) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_cube([](auto u, auto) { return u[0] * u[1]; }, 2, flat) ==
        doctest::Approx(0.25).epsilon(1e-10));
  const std::array<EndpointExponents, 2> sing{{{-0.5, 0.0}, {-0.5, 0.0}}};
  CHECK(integrate_cube([](auto u, auto) { return 1.0 / std::sqrt(u[0] * u[1]); }, 2, sing) ==
        doctest::Approx(4.0).epsilon(1e-9));
  const std::array<EndpointExponents, 3> dir{{{-0.5, 0.5}, {1.0, -0.7}, {0.0, 0.0}}};
  const double v = integrate_cube(
      [](auto u, auto c) {
        return std::pow(u[0], -0.5) * std::pow(c[0], 0.5) * u[1] * std::pow(c[1], -0.7) *
               std::exp(u[2]);
      },
      3, dir);
  const double ref =
      std::exp(log_beta(0.5, 1.5) + log_beta(2.0, 0.3)) * (std::numbers::e - 1.0);
  CHECK(v == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("integrate_cube limits") {
  std::array<EndpointExponents, 4> four{};
  CHECK_THROWS_AS(integrate_cube([](auto, auto) { return 1.0; }, 4, four), DimensionError);
  std::array<EndpointExponents, 1> one{};
  CHECK_THROWS_AS(integrate_cube([](auto, auto) { return 1.0; }, 2, one), std::invalid_argument);
  std::array<EndpointExponents, 1> bad{{{-1.0, 0.0}}};
  CHECK_THROWS_AS(integrate_cube([](auto, auto) { return 1.0; }, 1, bad), std::domain_error);
}

TEST_CASE("config validation") {
  QuadratureConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
