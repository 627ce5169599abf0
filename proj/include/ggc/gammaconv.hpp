#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "ggc/log_table.hpp"
#include "ggc/quadrature.hpp"

namespace ggc {

/// One Gamma(shape, rate) factor with density rate^shape / Γ(shape) · x^(shape-1) · e^(-rate·x).
struct GammaComponent {
  double shape = 1.0;
  double rate = 1.0;

  void validate() const;
};

/// Independent sum of gamma components shifted by the left extremity `shift`.
struct GammaConvolution {
  std::vector<GammaComponent> components;
  double shift = 0.0;

  void validate() const;
  std::size_t size() const { return components.size(); }
  double total_shape() const;
  double min_rate() const;
  double mean() const;
};

struct ThorinAtom {
  double location = 1.0;
  double mass = 1.0;
};

/// Atomic Thorin measure U(dt) = Σ mass·δ_location together with the left extremity.
struct ThorinMeasure {
  std::vector<ThorinAtom> atoms;
  double shift = 0.0;

  void validate() const;
};

/// Exponent q >= 1 of a power transform X ↦ X^q; alpha is 1/q.
class PowerLaw {
 public:
  explicit PowerLaw(double q);
  double q() const { return q_; }
  double alpha() const { return alpha_; }

 private:
  double q_;
  double alpha_;
};

/// Raised when an operation only defined for zero left extremity receives a shifted model.
class UnsupportedShift : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double log_gamma_density(const GammaComponent& c, double x);
double gamma_density(const GammaComponent& c, double x);

/// Density of X1 + X2 from the one-dimensional mixing integral over the split fraction.
double density_pair(const GammaComponent& c1, const GammaComponent& c2, double x,
                    const QuadratureConfig& cfg = {});

/// The n summands of C_n(u) = b1(1-u1) + b2·u1(1-u2) + ... + bn·u1⋯u_{n-1}, in order.
std::vector<double> c_n_terms(std::span<const double> u, std::span<const double> rates);
double c_n(std::span<const double> u, std::span<const double> rates);

/// log B_n(u): the Dirichlet weight Γ(Σβ)/ΠΓ(β_i) · Π u_j^(β_{j+1}+…+β_n − 1) (1−u_j)^(β_j − 1)
/// on the split fractions that C_n assigns to each component.
double log_b_n(std::span<const double> u, std::span<const double> shapes);

/// log D_n = Σ β_i log b_i − log Γ(Σ β_i).
double log_d_n(std::span<const double> shapes, std::span<const double> rates);

enum class DensityMethod {
  Auto,      // closed form for n = 1, cube for n <= max_dim + 1, iterated otherwise
  Direct,    // (n-1)-dimensional cube integral
  Iterated,  // repeated pairwise convolution against tabulated partial sums
};

/// Density evaluator for a GammaConvolution. Construction does the expensive
/// setup (partial-sum tables for the iterated route) once; evaluation is const
/// and reentrant.
class SumDensity {
 public:
  SumDensity(GammaConvolution gc, QuadratureConfig cfg = {},
             DensityMethod method = DensityMethod::Auto, double x_max = 0.0);

  /// Density at x (in the model's coordinates, so x > shift).
  double operator()(double x) const;
  /// log density at x.
  double log_density(double x) const;
  /// log of the smooth factor φ(y) = f(shift + y) · y^(1 - Σβ).
  double log_smooth(double y) const;

  DensityMethod method() const { return method_; }
  const GammaConvolution& model() const { return gc_; }
  double range() const { return range_; }

 private:
  double log_smooth_direct(double y) const;
  double log_smooth_iterated(double y) const;

  GammaConvolution gc_;
  QuadratureConfig cfg_;
  DensityMethod method_;
  double range_;
  // partial_[k] tabulates log φ of the first k+2 components (k = 0..n-3).
  std::vector<LogTable> partial_;
};

/// Point where every tail of the model's density is negligible (< ~1e-300 relative).
double density_range(const GammaConvolution& gc);

double density_sum(const GammaConvolution& gc, double x, const QuadratureConfig& cfg = {});
double density_sum_direct(const GammaConvolution& gc, double x, const QuadratureConfig& cfg = {});
double density_sum_iterated(const GammaConvolution& gc, double x, const QuadratureConfig& cfg = {});

/// E[(X - shift)^p] by half-line quadrature against density_sum, p > -Σβ.
double power_moment(const GammaConvolution& gc, double p, const QuadratureConfig& cfg = {});

/// E[e^{-sX}] = e^{-a s} ∏ (b_i / (b_i + s))^{β_i}.
double laplace_exact(const GammaConvolution& gc, double s);

ThorinMeasure to_thorin(const GammaConvolution& gc);
double thorin_laplace(const ThorinMeasure& tm, double s);

/// s ↦ E[exp(-s X^q)] for an unshifted GammaConvolution. The density is
/// tabulated once at construction; each evaluation is one half-line integral.
class PowerLaplace {
 public:
  PowerLaplace(const GammaConvolution& gc, PowerLaw power, QuadratureConfig cfg = {});
  double operator()(double s) const;

  const PowerLaw& power() const { return power_; }

 private:
  double total_shape_;
  PowerLaw power_;
  QuadratureConfig cfg_;
  LogTable log_smooth_;
};

double laplace_power(const GammaConvolution& gc, const PowerLaw& p, double s,
                     const QuadratureConfig& cfg = {});

}  // namespace ggc
