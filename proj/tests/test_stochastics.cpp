#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "ggc/stochastics.hpp"

using namespace ggc;

namespace {

double se_mean(const Sample& s) { return std::sqrt(sample_variance(s) / static_cast<double>(s.values.size())); }

}  // namespace

TEST_CASE("uniform stays inside (0,1)") {
  Rng rng(Seed{3});
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("sample_gamma moments") {
  const auto a = sample_gamma({1, 1}, 1000000, Seed{11});
  CHECK(std::abs(sample_mean(a) - 1.0) < 4.0 * se_mean(a));
  const auto b = sample_gamma({2, 4}, 1000000, Seed{12});
  // Var of the sample variance for Gamma(β,b): (μ4 - σ⁴)/n with μ4 = 3β(β+2)/b⁴
  const double var = 2.0 / 16.0;
  const double mu4 = 3.0 * 2.0 * 4.0 / 256.0;
  CHECK(std::abs(sample_variance(b) - var) < 4.0 * std::sqrt((mu4 - var * var) / 1e6));
}

TEST_CASE("gamma samplers match the gamma CDF") {
  for (const GammaComponent c : {GammaComponent{0.3, 1}, GammaComponent{0.5, 2}, GammaComponent{3.5, 0.7}}) {
    const auto s = sample_gamma(c, 100000, Seed{5});
    const double d = ks_distance(s, [&](double x) { return boost::math::gamma_p(c.shape, c.rate * x); });
    CAPTURE(c.shape);
    CHECK(d < 0.01);
  }
  const GammaConvolution single{{{0.5, 2}}, 0.0};
  const auto s = sample_ggc(single, 100000, Seed{8});
  CHECK(ks_distance(s, [](double x) { return boost::math::gamma_p(0.5, 2.0 * x); }) < 0.01);
}

TEST_CASE("shift and sums") {
  const GammaConvolution g{{{1, 1}, {1, 2}}, 2.0};
  const auto s = sample_ggc(g, 200000, Seed{21});
  for (double v : s.values) REQUIRE(v > 2.0);
  CHECK(std::abs(sample_mean(s) - g.mean()) < 4.0 * se_mean(s));
}

TEST_CASE("determinism") {
  const GammaConvolution g{{{0.5, 1}, {1.5, 3}}, 0.0};
  CHECK(sample_ggc(g, 1000, Seed{9}).values == sample_ggc(g, 1000, Seed{9}).values);
  CHECK(sample_ggc(g, 1000, Seed{9}).values != sample_ggc(g, 1000, Seed{10}).values);
  CHECK(derive_seed(Seed{1}, 0).value != derive_seed(Seed{1}, 1).value);
}

TEST_CASE("sample_power_product") {
  const GammaConvolution g{{{1, 1}}, 0.0};
  const auto a = sample_power_product({g}, {1.0}, Combine::Sum, 100000, Seed{4});
  const auto b = sample_ggc(g, 100000, Seed{44});
  CHECK(ks_distance(a, b) < 0.01);
  // E[X^2] = 2 for Exp(1)
  const auto sq = sample_power_product({g}, {2.0}, Combine::Sum, 400000, Seed{4});
  CHECK(std::abs(sample_mean(sq) - 2.0) < 4.0 * se_mean(sq));
  const auto prod = sample_power_product({g, g}, {1.0, 1.0}, Combine::Product, 400000, Seed{4});
  CHECK(std::abs(sample_mean(prod) - 1.0) < 4.0 * se_mean(prod));
  CHECK_THROWS_AS(sample_power_product({g}, {0.5}, Combine::Sum, 10, Seed{1}), std::invalid_argument);
  CHECK_THROWS_AS(sample_power_product({g}, {1.0, 2.0}, Combine::Sum, 10, Seed{1}), std::invalid_argument);
  CHECK_THROWS_AS(sample_power_product({{{{1, 1}}, 1.0}}, {2.0}, Combine::Sum, 10, Seed{1}), UnsupportedShift);
}

TEST_CASE("sample_sym_eggc") {
  const GammaConvolution g{{{1, 1}}, 0.0};
  // alpha = 2: sqrt(Y) Z, variance E[Y] = 1
  const auto s = sample_sym_eggc(g, 2.0, 400000, Seed{31});
  CHECK(std::abs(sample_mean(s)) < 4.0 * se_mean(s));
  CHECK(sample_variance(s) == doctest::Approx(1.0).epsilon(0.02));
  CHECK_THROWS_AS(sample_sym_eggc(g, 2.5, 10, Seed{1}), std::invalid_argument);
}

TEST_CASE("exp_limit_pair converges pathwise") {
  const GammaConvolution g{{{1, 1}}, 0.0};
  const auto [p1, e1] = exp_limit_pair(g, 1e-4, 1000, Seed{2});
  for (std::size_t i = 0; i < p1.values.size(); ++i) {
    if (e1.values[i] < 1.0) continue;
    CHECK(std::abs(p1.values[i] - e1.values[i]) <= 1e-2 * e1.values[i] + 1e-12);
  }
  CHECK_THROWS_AS(exp_limit_pair(g, 1.0, 10, Seed{1}), std::invalid_argument);
}

TEST_CASE("ks_distance") {
  Sample a{{1, 2, 3}, "a"};
  Sample b{{10, 11}, "b"};
  CHECK(ks_distance(a, a) == 0.0);
  CHECK(ks_distance(a, b) == 1.0);
  Rng rng(Seed{77});
  Sample u;
  for (int i = 0; i < 100000; ++i) u.values.push_back(rng.uniform());
  CHECK(ks_distance(u, [](double x) { return x; }) < 0.007);
  CHECK_THROWS_AS(ks_distance(Sample{}, a), std::invalid_argument);
}

TEST_CASE("write_csv") {
  Sample s{{0.1, 1.0 / 3.0}, "test"};
  std::ostringstream out;
  write_csv(s, out);
  CHECK(out.str() == "test\n0.10000000000000001\n0.33333333333333331\n");
}
