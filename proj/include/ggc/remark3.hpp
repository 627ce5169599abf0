#pragma once

#include "ggc/quadrature.hpp"

namespace ggc {

/// Parameters of the two-variable inner integral of the n = 2 power argument:
/// ∫₀¹∫₀¹ exp(-x[b1((1-u)y^α + (1-v)y^{-α}) + b2(u y^α + v y^{-α})]) (u(1-u)v(1-v))^{shape-1} du dv.
struct PairInnerIntegral {
  double shape = 1.0;
  double b1 = 1.0;
  double b2 = 1.0;
  double x = 1.0;
  double alpha = 1.0;

  double operator()(double y, const QuadratureConfig& cfg = {}) const;
};

/// π Γ(β)² e^{-(y + 1/y)} I_β(y/2) I_β(1/(2y)).
double remark3_bessel_product(double beta, double y);

/// Setting under which the Bessel product is matched: gamma shape β + 1/2,
/// rates 1/2 and 3/2 (mean 1, gap 1), unit x-scale, α = 1.
PairInnerIntegral remark3_setting(double beta);

}  // namespace ggc
