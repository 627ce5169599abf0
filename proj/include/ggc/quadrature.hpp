#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ggc {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  std::size_t max_subdivisions = 2000;  // node budget of a single 1-D rule
  std::size_t max_dim = 3;
  double tail_cut_tol = 1e-16;

  /// Throws std::invalid_argument when a field violates its invariant.
  void validate() const;
};

/// Raised when the node budget runs out before the error estimate meets the tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

/// Raised by integrate_cube when d exceeds cfg.max_dim.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Algebraic blow-up rates at the two ends of [0,1]: the integrand behaves like
/// u^left near 0 and (1-u)^right near 1. Both must exceed -1.
struct EndpointExponents {
  double left = 0.0;
  double right = 0.0;
};

using UnitIntegrand = std::function<double(double)>;
/// Receives (u, 1-u) with the complement computed without cancellation.
using UnitIntegrandC = std::function<double(double, double)>;
using CubeIntegrand = std::function<double(std::span<const double>, std::span<const double>)>;

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

/// ∫₀¹ f(u) du by tanh-sinh quadrature. The declared exponents size the
/// truncation of the double-exponential node range.
double integrate_unit(const UnitIntegrand& f, double left_exponent, double right_exponent,
                      const QuadratureConfig& cfg = {});
double integrate_unit(const UnitIntegrandC& f, EndpointExponents exponents,
                      const QuadratureConfig& cfg = {});
QuadratureResult integrate_unit_detailed(const UnitIntegrandC& f, EndpointExponents exponents,
                                         const QuadratureConfig& cfg = {});

/// ∫₀^∞ f(x) dx. A doubling search locates T where |f| has dropped below
/// tail_cut_tol times its sampled peak, then [0,T] is mapped onto [0,1].
/// `left_exponent` declares an x^p singularity at the origin (p > -1).
double integrate_halfline(const std::function<double(double)>& f, const QuadratureConfig& cfg = {},
                          double left_exponent = 0.0);

/// ∫₀^cut f(x) dx with a caller-supplied truncation point.
double integrate_to(const std::function<double(double)>& f, double cut,
                    const QuadratureConfig& cfg = {}, double left_exponent = 0.0);

/// Locates the truncation point used by integrate_halfline.
double halfline_cutoff(const std::function<double(double)>& f, const QuadratureConfig& cfg);

/// ∫_{(0,1)^d} f by iterated tanh-sinh rules, one per axis, d <= cfg.max_dim.
double integrate_cube(const CubeIntegrand& f, std::size_t d,
                      std::span<const EndpointExponents> exponents,
                      const QuadratureConfig& cfg = {});

/// ∫_{(0,1)^d} Π u_j^left_j (1-u_j)^right_j · f. The power factors go into the node
/// weights, so f should be the smooth remainder only.
double integrate_cube_weighted(const CubeIntegrand& f, std::size_t d,
                               std::span<const EndpointExponents> exponents,
                               const QuadratureConfig& cfg = {});

}  // namespace ggc
