#include "ggc/remark3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ggc/specfun.hpp"

namespace ggc {

double PairInnerIntegral::operator()(double y, const QuadratureConfig& cfg) const {
  if (!(y > 0.0)) throw std::domain_error("PairInnerIntegral: y must be positive");
  if (!(shape > 0.0) || !(b1 > 0.0) || !(b2 > 0.0) || !(x > 0.0) || !(alpha > 0.0)) {
    throw std::invalid_argument("PairInnerIntegral: parameters must be positive");
  }
  const double up = std::pow(y, alpha);
  const double down = 1.0 / up;
  const double bmin = std::min(b1, b2);
  const EndpointExponents axis{shape - 1.0, shape - 1.0};
  const EndpointExponents exps[2] = {axis, axis};
  const double value = integrate_cube(
      [&](std::span<const double> u, std::span<const double> c) {
        const double e = b1 * (c[0] * up + c[1] * down) + b2 * (u[0] * up + u[1] * down) -
                         bmin * (up + down);
        const double log_w =
            (shape - 1.0) * (std::log(u[0]) + std::log(c[0]) + std::log(u[1]) + std::log(c[1]));
        return std::exp(log_w - x * e);
      },
      2, exps, cfg);
  return std::exp(-x * bmin * (up + down)) * value;
}

double remark3_bessel_product(double beta, double y) {
  if (!(beta > 0.0) || !(y > 0.0)) {
    throw std::domain_error("remark3_bessel_product: beta and y must be positive");
  }
  return std::numbers::pi * std::exp(2.0 * log_gamma(beta) - (y + 1.0 / y)) *
         bessel_i(beta, 0.5 * y) * bessel_i(beta, 0.5 / y);
}

PairInnerIntegral remark3_setting(double beta) {
  return PairInnerIntegral{beta + 0.5, 0.5, 1.5, 1.0, 1.0};
}

}  // namespace ggc
