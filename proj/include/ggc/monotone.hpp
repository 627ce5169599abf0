#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ggc/quadrature.hpp"

namespace ggc {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct Window {
  double lo = 0.0;
  double hi = 1.0;
};

struct CMLocation {
  int order = 0;
  double point = 0.0;
  double step = 0.0;
};

/// Outcome of an alternating-finite-difference complete-monotonicity test.
///
/// verdict == Pass iff worst_margin >= -tolerance_used. A Fail additionally
/// requires a violation that keeps its sign beyond the noise floor at every
/// step of the ladder; anything in between is Inconclusive.
struct CMReport {
  int max_order = 0;
  Window window;
  std::size_t points = 0;
  std::string spacing = "linear";
  double worst_margin = 0.0;
  CMLocation worst_location;
  Verdict verdict = Verdict::Pass;
  double tolerance_used = 0.0;
  double noise_floor = 0.0;            // at max_order
  std::size_t persistent_violations = 0;
  std::string label;                   // e.g. "u=0.1" inside an HCM sweep
  std::vector<CMReport> parts;         // per-u reports of an HCM sweep
};

struct CMOptions {
  std::size_t points = 64;
  std::vector<double> step_divisors = {8.0, 16.0, 32.0};
  /// Relative accuracy of the function values; raises the noise floor above
  /// machine epsilon for functions computed by quadrature.
  double value_noise = 0.0;
};

/// Tests (-1)^m Δ_h^m f(x) >= 0 for m = 1..max_order on a linear grid over the
/// window with steps h = x/8, x/16, x/32, normalized by max |f| on the window.
CMReport cm_check(const std::function<double(double)>& f, Window window, int max_order,
                  double rel_tol, const CMOptions& options = {});

struct HCMConfig {
  std::vector<double> u_grid = default_u_grid();
  Window w_window{2.05, 12.0};
  std::size_t w_points = 64;
  int max_order = 8;
  double rel_tol = 1e-6;
  double value_noise = 0.0;

  static std::vector<double> default_u_grid();
  void validate() const;
};

/// φ(s·t) · φ(s/t).
double hcm_surface(const std::function<double(double)>& phi, double s, double t);

/// For each u, runs cm_check on w ↦ f(u·v(w)) f(u/v(w)), v(w) = (w + √(w²-4))/2,
/// and aggregates: the worst verdict wins, worst_margin is the minimum.
CMReport hcm_check(const std::function<double(double)>& f, const HCMConfig& cfg = {});

struct Lemma2Params {
  double b1 = 1.0;
  double b2 = 1.0;
  double beta1 = 1.0;
  double beta2 = 1.0;
  double A = 1.0;
  double B = 1.0;
  double alpha = 0.5;

  void validate() const;
};

/// ∫₀¹∫₀¹ e^{-E} ((1-u)(1-v))^{β1-1} (uv)^{β2-1} du dv with
/// E = b1((1-u)A y^α + (1-v)B y^{-α}) + b2(u A y^α + v B y^{-α}).
double lemma2_integral(const Lemma2Params& p, double y, const QuadratureConfig& cfg = {});

/// Inverse of σ = A y^α + B y^{-α} on the branch A y^α >= B y^{-α}.
double hyperbolic_preimage(double sigma, double A, double B, double alpha);

/// Runs cm_check on σ ↦ values(y(σ)). The default window is [2.05, 12]·√(AB);
/// σ <= 2√(AB) is a domain error.
CMReport cm_in_hyperbolic_variable(const std::function<double(double)>& values, double A, double B,
                                   double alpha, int order, double rel_tol,
                                   std::optional<Window> window = std::nullopt,
                                   const CMOptions& options = {});

}  // namespace ggc
