#include "ggc/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ggc {
namespace {

// Argument-keyed cache; evaluation points of neighbouring orders and steps coincide.
class Memo {
 public:
  explicit Memo(const std::function<double(double)>& f) : f_(f) {}
  double operator()(double x) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(x); it != cache_.end()) return it->second;
    }
    const double v = f_(x);
    std::lock_guard lock(mutex_);
    cache_.emplace(x, v);
    return v;
  }

 private:
  const std::function<double(double)>& f_;
  std::map<double, double> cache_;
  std::mutex mutex_;
};

double binomial(int m, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (m - k + i) / i;
  return std::round(c);
}

int severity(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Inconclusive: return 1;
    case Verdict::Fail: return 2;
  }
  return 0;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

CMReport cm_check(const std::function<double(double)>& f, Window window, int max_order,
                  double rel_tol, const CMOptions& options) {
  if (!(window.lo > 0.0) || !(window.hi > window.lo)) {
    throw std::domain_error("cm_check: window must satisfy 0 < lo < hi");
  }
  if (max_order < 1) throw std::invalid_argument("cm_check: max_order must be >= 1");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("cm_check: rel_tol must be positive");
  if (options.points < 2 || options.step_divisors.empty()) {
    throw std::invalid_argument("cm_check: need at least two grid points and one step");
  }

  Memo memo(f);
  std::vector<double> grid(options.points);
  for (std::size_t i = 0; i < options.points; ++i) {
    grid[i] = window.lo + (window.hi - window.lo) * static_cast<double>(i) /
                              static_cast<double>(options.points - 1);
  }
  double scale = 0.0;
  for (double x : grid) {
    const double v = memo(x);
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw std::domain_error("cm_check: f must be positive and finite on the window");
    }
    scale = std::max(scale, std::abs(v));
  }

  const double unit_noise = std::max(std::numeric_limits<double>::epsilon(), options.value_noise);
  CMReport report;
  report.max_order = max_order;
  report.window = window;
  report.points = options.points;
  report.tolerance_used = rel_tol;
  report.worst_margin = std::numeric_limits<double>::infinity();
  report.noise_floor = std::ldexp(unit_noise, max_order);

  std::vector<double> margins(options.step_divisors.size());
  double worst_confirmed = 0.0;
  for (int m = 1; m <= max_order; ++m) {
    const double floor_m = std::ldexp(unit_noise, m);
    for (double x : grid) {
      for (std::size_t s = 0; s < options.step_divisors.size(); ++s) {
        const double h = x / options.step_divisors[s];
        // (-1)^m Δ_h^m f(x) = Σ_k (-1)^k C(m,k) f(x + k h)
        double acc = 0.0;
        double comp = 0.0;
        for (int k = 0; k <= m; ++k) {
          const double term = ((k % 2 == 0) ? 1.0 : -1.0) * binomial(m, k) * memo(x + k * h);
          const double t = acc + term;
          comp += std::abs(acc) >= std::abs(term) ? (acc - t) + term : (term - t) + acc;
          acc = t;
        }
        margins[s] = (acc + comp) / scale;
        if (margins[s] < report.worst_margin) {
          report.worst_margin = margins[s];
          report.worst_location = {m, x, h};
        }
      }
      const double most = *std::min_element(margins.begin(), margins.end());
      const bool persists = std::all_of(margins.begin(), margins.end(),
                                        [&](double d) { return d < -floor_m; });
      if (persists && most < -rel_tol && most < -floor_m) {
        ++report.persistent_violations;
        worst_confirmed = std::min(worst_confirmed, most);
      }
    }
  }

  if (report.worst_margin >= -rel_tol) {
    report.verdict = Verdict::Pass;
  } else if (report.persistent_violations > 0) {
    report.verdict = Verdict::Fail;
  } else {
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

std::vector<double> HCMConfig::default_u_grid() {
  std::vector<double> u;
  for (int i = 0; i < 9; ++i) u.push_back(std::pow(10.0, -2.0 + 0.5 * i));
  return u;
}

void HCMConfig::validate() const {
  if (u_grid.empty()) throw std::invalid_argument("HCMConfig: empty u grid");
  for (double u : u_grid) {
    if (!(u > 0.0)) throw std::invalid_argument("HCMConfig: u grid must be positive");
  }
  if (!(w_window.lo > 2.0) || !(w_window.hi > w_window.lo)) {
    throw std::invalid_argument("HCMConfig: w window must lie strictly above 2");
  }
  if (max_order < 2) throw std::invalid_argument("HCMConfig: max_order must be >= 2");
  if (w_points < 2) throw std::invalid_argument("HCMConfig: need at least two w points");
}

double hcm_surface(const std::function<double(double)>& phi, double s, double t) {
  if (!(s > 0.0) || !(t > 0.0)) throw std::domain_error("hcm_surface: s and t must be positive");
  return phi(s * t) * phi(s / t);
}

CMReport hcm_check(const std::function<double(double)>& f, const HCMConfig& cfg) {
  cfg.validate();
  Memo memo(f);
  std::function<double(double)> cached = [&memo](double s) { return memo(s); };
  CMOptions options;
  options.points = cfg.w_points;
  options.value_noise = cfg.value_noise;

  CMReport agg;
  agg.max_order = cfg.max_order;
  agg.window = cfg.w_window;
  agg.points = cfg.w_points;
  agg.tolerance_used = cfg.rel_tol;
  agg.worst_margin = std::numeric_limits<double>::infinity();
  agg.label = "hcm";
  for (double u : cfg.u_grid) {
    auto h = [&](double w) {
      const double v = 0.5 * (w + std::sqrt((w - 2.0) * (w + 2.0)));
      return cached(u * v) * cached(u / v);
    };
    CMReport r = cm_check(h, cfg.w_window, cfg.max_order, cfg.rel_tol, options);
    r.label = "u=" + std::to_string(u);
    if (r.worst_margin < agg.worst_margin) {
      agg.worst_margin = r.worst_margin;
      agg.worst_location = r.worst_location;
    }
    if (severity(r.verdict) > severity(agg.verdict)) agg.verdict = r.verdict;
    agg.persistent_violations += r.persistent_violations;
    agg.noise_floor = r.noise_floor;
    agg.parts.push_back(std::move(r));
  }
  return agg;
}

void Lemma2Params::validate() const {
  for (double v : {b1, b2, beta1, beta2, A, B}) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw std::invalid_argument("Lemma2Params: rates, shapes, A and B must be positive");
    }
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("Lemma2Params: alpha must lie in (0,1)");
  }
}

double lemma2_integral(const Lemma2Params& p, double y, const QuadratureConfig& cfg) {
  p.validate();
  if (!(y > 0.0)) throw std::domain_error("lemma2_integral: y must be positive");
  const double big = p.A * std::pow(y, p.alpha);
  const double small = p.B * std::pow(y, -p.alpha);
  const double bmin = std::min(p.b1, p.b2);
  const EndpointExponents axis{p.beta2 - 1.0, p.beta1 - 1.0};
  const EndpointExponents exps[2] = {axis, axis};
  const double value = integrate_cube(
      [&](std::span<const double> u, std::span<const double> c) {
        const double e = p.b1 * (c[0] * big + c[1] * small) + p.b2 * (u[0] * big + u[1] * small) -
                         bmin * (big + small);
        const double log_g = (p.beta1 - 1.0) * (std::log(c[0]) + std::log(c[1])) +
                             (p.beta2 - 1.0) * (std::log(u[0]) + std::log(u[1]));
        return std::exp(log_g - e);
      },
      2, exps, cfg);
  return std::exp(-bmin * (big + small)) * value;
}

double hyperbolic_preimage(double sigma, double A, double B, double alpha) {
  if (!(A > 0.0) || !(B > 0.0) || !(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("hyperbolic_preimage: need A, B > 0 and 0 < alpha < 1");
  }
  const double disc = sigma * sigma - 4.0 * A * B;
  if (!(sigma > 0.0) || !(disc > 0.0)) {
    throw std::domain_error("hyperbolic_preimage: sigma must exceed 2*sqrt(AB)");
  }
  const double big = 0.5 * (sigma + std::sqrt(disc));  // A y^α
  return std::pow(big / A, 1.0 / alpha);
}

CMReport cm_in_hyperbolic_variable(const std::function<double(double)>& values, double A, double B,
                                   double alpha, int order, double rel_tol,
                                   std::optional<Window> requested, const CMOptions& options) {
  const double root = 2.0 * std::sqrt(A * B);
  const Window window = requested.value_or(Window{1.025 * root, 6.0 * root});
  if (!(window.lo > root)) {
    throw std::domain_error("cm_in_hyperbolic_variable: window must lie above 2*sqrt(AB)");
  }
  hyperbolic_preimage(window.lo, A, B, alpha);  // validates parameters
  return cm_check([&](double sigma) { return values(hyperbolic_preimage(sigma, A, B, alpha)); },
                  window, order, rel_tol, options);
}

}  // namespace ggc
