#include "ggc/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ggc {
namespace {

// Coefficients c_k of ln Γ(2+z) = (1−γ) z + Σ_{k>=2} c_k z^k,
// c_k = (−1)^k (ζ(k) − 1) / k.
constexpr double kOneMinusEuler = 0.42278433509846713939;
constexpr std::array<double, 54> kLgammaSeries = {
    0.3224670334241132,      -0.0673523010531981,     0.020580808427784546,
    -0.007385551028673986,   0.0028905103307415234,   -0.001192753911703261,
    0.0005096695247430425,   -0.00022315475845357939, 9.945751278180853e-05,
    -4.492623673813314e-05,  2.050721277567069e-05,   -9.439488275268397e-06,
    4.374866789907488e-06,   -2.039215753801366e-06,  9.55141213040742e-07,
    -4.492469198764566e-07,  2.1207184805554665e-07,  -1.0043224823968099e-07,
    4.7698101693639804e-08,  -2.2711094608943164e-08, 1.0838659214896955e-08,
    -5.183475041970047e-09,  2.4836745438024785e-09,  -1.1921401405860912e-09,
    5.731367241678862e-10,   -2.7595228851242334e-10, 1.330476437424449e-10,
    -6.4229645638381e-11,    3.1044247747322276e-11,  -1.5021384080754142e-11,
    7.275974480239079e-12,   -3.527742476575915e-12,  1.711991790559618e-12,
    -8.315385841420285e-13,  4.04220052528944e-13,    -1.9664756310966165e-13,
    9.573630387838556e-14,   -4.6640760264283744e-14, 2.2737369600659724e-14,
    -1.1091399470834522e-14, 5.413659156725363e-15,   -2.643880017860995e-15,
    1.2918959062789966e-15,  -6.315935504198448e-16,  3.089316266963393e-16,
    -1.5117930628108198e-16, 7.40148685695232e-17,    -3.625218048120654e-17,
    1.7763568421861633e-17,  -8.70763157479179e-18,   4.270088559227004e-18,
    -2.0947604247944643e-18, 1.0279842823787928e-18,  -5.046468294792953e-19,
};

// ln Γ(2+z) for |z| <= 0.5.
double log_gamma_two_plus(double z) {
  double acc = 0.0;
  for (auto it = kLgammaSeries.rbegin(); it != kLgammaSeries.rend(); ++it) {
    acc = acc * z + *it;
  }
  return z * (kOneMinusEuler + z * acc);
}

double stirling(double x) {
  // B_{2k} / (2k (2k-1)) for k = 1..8
  constexpr std::array<double, 8> c = {
      1.0 / 12.0,   -1.0 / 360.0,        1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0, -691.0 / 360360.0,   1.0 / 156.0,  -3617.0 / 122400.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double corr = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) corr = corr * inv2 + *it;
  corr *= inv;
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return (x - 0.5) * std::log(x) - x + half_log_two_pi + corr;
}

}  // namespace

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error("log_gamma: argument must be positive and finite, got " +
                            std::to_string(x));
  }
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  if (x < 1.5) {
    const double z = x - 1.0;
    return log_gamma_two_plus(z) - std::log1p(z);
  }
  if (x <= 2.5) return log_gamma_two_plus(x - 2.0);
  if (x < 10.0) {
    double prod = 1.0;
    double y = x;
    while (y > 2.5) {
      y -= 1.0;
      prod *= y;
    }
    return std::log(prod) + log_gamma_two_plus(y - 2.0);
  }
  return stirling(x);
}

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

namespace {

double bessel_i_series(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  const double log_pref = nu * std::log(0.5 * x) - log_gamma(nu + 1.0);
  return std::exp(log_pref + std::log(sum));
}

// Hankel expansion; returns NaN when the series does not reach full precision
// before its terms start growing.
double bessel_i_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) >= std::abs(term)) return std::numeric_limits<double>::quiet_NaN();
    term = next;
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) {
      return std::exp(x) / std::sqrt(2.0 * std::numbers::pi * x) * sum;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double bessel_i(double order, double x) {
  if (!(order >= 0.0) || !(x >= 0.0) || !std::isfinite(order) || !std::isfinite(x)) {
    throw std::domain_error("bessel_i: order and argument must be nonnegative and finite");
  }
  if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
  if (x > 15.0) {
    const double v = bessel_i_asymptotic(order, x);
    if (!std::isnan(v)) return v;
  }
  return bessel_i_series(order, x);
}

}  // namespace ggc
