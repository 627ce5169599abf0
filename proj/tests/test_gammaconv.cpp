#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ggc/gammaconv.hpp"

using namespace ggc;

namespace {

GammaConvolution model(std::vector<GammaComponent> c, double shift = 0.0) { return {std::move(c), shift}; }

double hypo3(double x) { return 3.0 * (std::exp(-x) - 2.0 * std::exp(-2.0 * x) + std::exp(-3.0 * x)); }

}  // namespace

TEST_CASE("gamma_density") {
  CHECK(gamma_density({1, 1}, 0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(gamma_density({2, 1}, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(gamma_density({0.5, 1}, 1.0) ==
        doctest::Approx(std::exp(-1.0) / std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK_THROWS_AS(gamma_density({1, 1}, 0.0), std::domain_error);
  CHECK(log_gamma_density({3, 2}, 1e-200) < -900.0);
}

TEST_CASE("density_pair closed forms") {
  CHECK(density_pair({1, 1}, {1, 2}, 1.0) ==
        doctest::Approx(2.0 * (std::exp(-1.0) - std::exp(-2.0))).epsilon(1e-10));
  CHECK(density_pair({1, 1}, {1, 1}, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
  CHECK(density_pair({0.5, 3}, {0.5, 3}, 1.0) == doctest::Approx(3.0 * std::exp(-3.0)).epsilon(1e-10));
}

TEST_CASE("density_pair against the confluent hypergeometric form") {
  // b1^β1 b2^β2/Γ(β1+β2) x^{β1+β2-1} e^{-b2 x} 1F1(β1; β1+β2; (b2-b1)x), mpmath at 30 digits
  CHECK(density_pair({0.5, 1}, {1.5, 3}, 0.1) == doctest::Approx(0.4051913568997997171).epsilon(1e-10));
  CHECK(density_pair({0.5, 1}, {1.5, 3}, 1.0) == doctest::Approx(0.49289359585307679703).epsilon(1e-10));
  CHECK(density_pair({0.5, 1}, {1.5, 3}, 4.0) == doctest::Approx(0.01075471799996212064).epsilon(1e-10));
  CHECK(density_pair({1.5, 0.5}, {0.5, 2}, 0.1) == doctest::Approx(0.045842762923878952899).epsilon(1e-10));
  CHECK(density_pair({1.5, 0.5}, {0.5, 2}, 1.0) == doctest::Approx(0.22170303298079889305).epsilon(1e-10));
  CHECK(density_pair({1.5, 0.5}, {0.5, 2}, 4.0) == doctest::Approx(0.11904824149941921732).epsilon(1e-10));
}

TEST_CASE("c_n") {
  const std::array<double, 1> u1{0.5};
  const std::array<double, 2> r2{1, 3};
  CHECK(c_n(u1, r2) == doctest::Approx(2.0));
  const std::array<double, 2> u2{0.5, 0.5};
  const std::array<double, 3> r3{1, 2, 4};
  CHECK(c_n(u2, r3) == doctest::Approx(2.0));
  const std::array<double, 2> near_one{1.0 - 1e-12, 1.0 - 1e-12};
  CHECK(c_n(near_one, r3) == doctest::Approx(4.0).epsilon(1e-10));
  const auto terms = c_n_terms(u2, r3);
  REQUIRE(terms.size() == 3);
  CHECK(terms[0] == doctest::Approx(0.5));
  CHECK(terms[1] == doctest::Approx(0.5));
  CHECK(terms[2] == doctest::Approx(1.0));
  const std::array<double, 1> bad{1.5};
  CHECK_THROWS_AS(c_n(bad, r2), std::domain_error);
  CHECK_THROWS_AS(c_n(u2, r2), std::invalid_argument);
}

TEST_CASE("c_n last two terms collapse to a convex combination") {
  const std::array<double, 3> u{0.3, 0.6, 0.8};
  const std::array<double, 4> r{1.5, 0.7, 2.0, 5.0};
  const auto t = c_n_terms(u, r);
  const double head = u[0] * u[1];
  CHECK(t[2] + t[3] == doctest::Approx(head * (r[2] * (1 - u[2]) + r[3] * u[2])).epsilon(1e-15));
}

TEST_CASE("b_n and d_n") {
  const std::array<double, 1> u1{0.5};
  const std::array<double, 2> s11{1, 1};
  const std::array<double, 2> s21{2, 1};
  CHECK(std::abs(log_b_n(u1, s11)) < 1e-15);
  CHECK(std::abs(log_b_n(u1, s21)) < 1e-15);
  const std::array<double, 2> u2{0.5, 0.5};
  const std::array<double, 3> s111{1, 1, 1};
  CHECK(std::abs(log_b_n(u2, s111)) < 1e-15);

  const std::array<double, 1> one{1};
  CHECK(std::abs(log_d_n(one, one)) < 1e-15);
  const std::array<double, 2> r23{2, 3};
  CHECK(log_d_n(s11, r23) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
  const std::array<double, 2> half{0.5, 0.5};
  CHECK(std::abs(log_d_n(half, s11)) < 1e-15);
}

TEST_CASE("B_n integrates to one on the cube") {
  // The Dirichlet weight is a probability density in the split fractions.
  const std::array<double, 3> shapes{1.0, 1.5, 0.5};
  const std::array<EndpointExponents, 2> ex{{{shapes[1] + shapes[2] - 1, shapes[0] - 1}, {shapes[2] - 1, shapes[1] - 1}}};
  const double total = integrate_cube(
      [&](auto u, auto) {
        // nodes within an ulp of 1 are outside log_b_n's open domain; their weight is nil
        if (u[0] >= 1.0 || u[1] >= 1.0) return 0.0;
        const std::array<double, 2> uu{u[0], u[1]};
        return std::exp(log_b_n(uu, shapes));
      },
      2, ex);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("density_sum reductions") {
  CHECK(density_sum(model({{1.5, 2}}), 0.7) == doctest::Approx(gamma_density({1.5, 2}, 0.7)).epsilon(1e-14));
  for (double x : {0.2, 1.0, 3.0}) {
    CHECK(std::abs(density_sum(model({{0.5, 1}, {1.5, 3}}), x) - density_pair({0.5, 1}, {1.5, 3}, x)) < 1e-9);
  }
  // Only the distance to the left extremity matters.
  CHECK(density_sum(model({{1, 1}, {1, 2}}, 2.0), 3.0) ==
        doctest::Approx(density_sum(model({{1, 1}, {1, 2}}), 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(density_sum(model({{1, 1}}, 2.0), 1.5), std::domain_error);
}

TEST_CASE("hypoexponential closed form") {
  const auto gc = model({{1, 1}, {1, 2}, {1, 3}});
  for (double x : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(density_sum_direct(gc, x) - hypo3(x)) < 1e-10);
    CHECK(std::abs(density_sum_iterated(gc, x) - hypo3(x)) < 1e-10);
  }
  CHECK(density_sum(gc, 1.0) == doctest::Approx(0.44098782919824264).epsilon(1e-10));
}

TEST_CASE("three and four components against nested convolution") {
  // mpmath nested quad of the gamma densities
  const auto g3 = model({{0.5, 1}, {1, 2}, {1.5, 3}});
  CHECK(density_sum(g3, 0.5) == doctest::Approx(0.41182703565674437).epsilon(1e-9));
  CHECK(density_sum(g3, 1.0) == doctest::Approx(0.54234553730047744).epsilon(1e-9));
  CHECK(density_sum(g3, 5.0) == doctest::Approx(0.0081752953555744604).epsilon(1e-9));
  const auto g4 = model({{0.5, 1}, {1, 2}, {2, 0.7}, {1.5, 3}});
  CHECK(density_sum(g4, 1.3) == doctest::Approx(0.077756929307165940).epsilon(1e-8));
  CHECK(density_sum_direct(g4, 1.3) == doctest::Approx(0.077756929307165940).epsilon(1e-8));
}

TEST_CASE("SumDensity refuses direct beyond max_dim") {
  QuadratureConfig cfg;
  cfg.max_dim = 2;
  const auto g4 = model({{0.5, 1}, {1, 2}, {2, 0.7}, {1.5, 3}});
  CHECK_THROWS_AS(SumDensity(g4, cfg, DensityMethod::Direct), DimensionError);
  CHECK(SumDensity(g4, cfg).method() == DensityMethod::Iterated);
}

TEST_CASE("laplace_exact and Thorin form") {
  const auto gc = model({{1, 1}, {1, 2}});
  CHECK(laplace_exact(gc, 0.0) == 1.0);
  CHECK(laplace_exact(model({{1, 1}}), 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(laplace_exact(gc, 2.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(laplace_exact(model({{1, 1}}, 2.0), 1.0) == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-15));

  const auto t1 = to_thorin(model({{2, 5}}));
  REQUIRE(t1.atoms.size() == 1);
  CHECK(t1.atoms[0].location == 5.0);
  CHECK(t1.atoms[0].mass == 2.0);
  const auto t2 = to_thorin(model({{1, 1}, {1, 1}}));
  REQUIRE(t2.atoms.size() == 1);
  CHECK(t2.atoms[0].mass == 2.0);
  const auto t3 = to_thorin(model({{1.5, 2}, {0.5, 1}}, 3.0));
  REQUIRE(t3.atoms.size() == 2);
  CHECK(t3.atoms[0].location == 1.0);
  CHECK(t3.atoms[0].mass == 0.5);
  CHECK(t3.atoms[1].location == 2.0);
  CHECK(t3.shift == 3.0);

  const auto g = model({{0.5, 1}, {1.5, 2}, {0.7, 9}}, 0.4);
  for (double s : {0.0, 0.1, 1.0, 10.0}) {
    CHECK(thorin_laplace(to_thorin(g), s) == doctest::Approx(laplace_exact(g, s)).epsilon(1e-14));
  }
  CHECK(thorin_laplace({{{1, 1}}, 0.0}, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("power_moment") {
  // E[X^p] = Γ(β+p)/(Γ(β) b^p) for one component
  CHECK(power_moment(model({{1.5, 2}}), 2.0) == doctest::Approx(1.5 * 2.5 / 4.0).epsilon(1e-9));
  CHECK(power_moment(model({{1, 1}, {1, 2}}), 1.0) == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(power_moment(model({{1, 1}, {1, 2}}), 2.0) == doctest::Approx(1.25 + 2.25).epsilon(1e-9));
}

TEST_CASE("laplace_power") {
  const auto e1 = model({{1, 1}});
  const double closed = std::sqrt(std::numbers::pi) / 2.0 * std::exp(0.25) * std::erfc(0.5);
  CHECK(laplace_power(e1, PowerLaw(2), 1.0) == doctest::Approx(closed).epsilon(1e-9));
  const auto pair = model({{0.5, 1}, {1.5, 3}});
  CHECK(laplace_power(pair, PowerLaw(2), 1.0) == doctest::Approx(0.50727321613773848).epsilon(1e-9));
  const PowerLaplace one(pair, PowerLaw(1));
  for (double s : {0.0, 0.3, 4.0}) CHECK(one(s) == doctest::Approx(laplace_exact(pair, s)).epsilon(1e-8));
  CHECK_THROWS_AS(PowerLaplace(model({{1, 1}}, 1.0), PowerLaw(2)), UnsupportedShift);
  CHECK_THROWS_AS(PowerLaw(0.5), std::invalid_argument);
  CHECK(PowerLaw(4).alpha() == 0.25);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(model({}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(model({{0, 1}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(model({{1, -1}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(model({{1, 1}}, -0.5).validate(), std::invalid_argument);
  CHECK(model({{0.5, 1}, {1.5, 2}}).total_shape() == 2.0);
  CHECK(model({{0.5, 1}, {1.5, 2}}).min_rate() == 1.0);
  CHECK(model({{0.5, 1}, {1.5, 2}}, 1.0).mean() == doctest::Approx(2.25));
}
