#include "ggc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ggc {
namespace {

// Neumaier compensated accumulator; summation order is fixed by the caller.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

constexpr int kMinLevel = 3;
constexpr int kMaxLevel = 12;
// π sinh t stays below this so that the node closest to an endpoint is a normal double.
constexpr double kMaxPiSinh = 700.0;

// Half-width of the node range in t for an endpoint with exponent p. Positive p
// does not shorten the range: the integrand's own scale near the endpoint is unknown.
double truncation(double p, double rel_tol) {
  const double log_tail = -std::log(std::clamp(rel_tol, 1e-300, 1.0) * 1e-3);
  const double need = log_tail / (std::numbers::pi * std::min(p + 1.0, 1.0));
  return std::asinh(std::min(need, kMaxPiSinh / std::numbers::pi));
}

struct Node {
  double u;
  double c;  // 1 - u
  double w;
};

Node node_at(double t) {
  const double s = 0.5 * std::numbers::pi * std::sinh(std::abs(t));
  const double e = std::exp(-2.0 * s);
  const double near = e / (1.0 + e);  // distance to the closer endpoint
  const double far = 1.0 / (1.0 + e);
  const double w = std::numbers::pi * std::cosh(t) * near * far;
  if (t >= 0.0) return {far, near, w};
  return {near, far, w};
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(tail_cut_tol > 0.0)) {
    throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
  }
  if (max_dim < 1) throw std::invalid_argument("QuadratureConfig: max_dim must be >= 1");
  if (max_subdivisions < 1) {
    throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
  }
}

QuadratureResult integrate_unit_detailed(const UnitIntegrandC& f, EndpointExponents exponents,
                                         const QuadratureConfig& cfg) {
  if (!(exponents.left > -1.0) || !(exponents.right > -1.0)) {
    throw std::domain_error("integrate_unit: endpoint exponents must exceed -1");
  }
  const double t_left = truncation(exponents.left, cfg.rel_tol);
  const double t_right = truncation(exponents.right, cfg.rel_tol);

  QuadratureResult out;
  auto eval = [&](double t) {
    const Node n = node_at(t);
    if (n.u <= 0.0 || n.c <= 0.0 || n.w == 0.0) return 0.0;
    const double v = f(n.u, n.c);
    ++out.evaluations;
    if (!std::isfinite(v)) {
      throw QuadratureError("integrate_unit: non-finite integrand at u=" + std::to_string(n.u),
                            std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::infinity());
    }
    return n.w * v;
  };

  // Level 0: integer nodes.
  CompensatedSum total;
  const int k_left = static_cast<int>(std::floor(t_left));
  const int k_right = static_cast<int>(std::floor(t_right));
  for (int k = -k_left; k <= k_right; ++k) total.add(eval(static_cast<double>(k)));

  double h = 1.0;
  double prev = total.value() * h;
  double err = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= kMaxLevel; ++level) {
    h *= 0.5;
    // New nodes are the odd multiples of h.
    const int odd_left = static_cast<int>(std::floor((t_left / h - 1.0) / 2.0));
    const int odd_right = static_cast<int>(std::floor((t_right / h - 1.0) / 2.0));
    for (int j = -odd_left - 1; j <= odd_right; ++j) total.add(eval((2.0 * j + 1.0) * h));
    const double est = total.value() * h;
    err = std::abs(est - prev);
    prev = est;
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(est));
    if (level >= kMinLevel && err <= tol) {
      out.value = est;
      out.error = err;
      return out;
    }
    const double next_nodes = (t_left + t_right) / (0.5 * h) + 1.0;
    if (next_nodes > static_cast<double>(cfg.max_subdivisions)) break;
  }
  throw QuadratureError("integrate_unit: node budget exhausted (estimate " + std::to_string(prev) +
                            ", error " + std::to_string(err) + ")",
                        prev, err);
}

double integrate_unit(const UnitIntegrandC& f, EndpointExponents exponents,
                      const QuadratureConfig& cfg) {
  return integrate_unit_detailed(f, exponents, cfg).value;
}

double integrate_unit(const UnitIntegrand& f, double left_exponent, double right_exponent,
                      const QuadratureConfig& cfg) {
  return integrate_unit_detailed([&f](double u, double) { return f(u); },
                                 {left_exponent, right_exponent}, cfg)
      .value;
}

double halfline_cutoff(const std::function<double(double)>& f, const QuadratureConfig& cfg) {
  double peak = 0.0;
  bool seen_peak = false;
  for (int k = -30; k <= 60; ++k) {
    const double x = std::ldexp(1.0, k);
    const double v = std::abs(f(x));
    if (!std::isfinite(v)) {
      throw QuadratureError("integrate_halfline: non-finite integrand at x=" + std::to_string(x),
                            std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::infinity());
    }
    if (v > peak) {
      peak = v;
      seen_peak = true;
      continue;
    }
    if (seen_peak && v < cfg.tail_cut_tol * peak) {
      const double next = std::abs(f(2.0 * x));
      if (next < cfg.tail_cut_tol * peak) return x;
    }
  }
  if (!seen_peak) return 1.0;  // integrand vanishes at every probe
  throw QuadratureError("integrate_halfline: no truncation point below 2^60", 0.0,
                        std::numeric_limits<double>::infinity());
}

double integrate_halfline(const std::function<double(double)>& f, const QuadratureConfig& cfg,
                          double left_exponent) {
  return integrate_to(f, halfline_cutoff(f, cfg), cfg, left_exponent);
}

double integrate_to(const std::function<double(double)>& f, double cut,
                    const QuadratureConfig& cfg, double left_exponent) {
  if (!(cut > 0.0) || !std::isfinite(cut)) {
    throw std::domain_error("integrate_to: cutoff must be positive and finite");
  }
  return integrate_unit_detailed([&](double u, double) { return cut * f(cut * u); },
                                 {left_exponent, 0.0}, cfg)
      .value;
}

namespace {

// Shared tensor-product driver. With `fold` set, u^left (1-u)^right is moved
// into the per-axis node weights so the integrand sees only the smooth part.
double cube_driver(const CubeIntegrand& f, std::size_t d, std::span<const EndpointExponents> exponents,
                   const QuadratureConfig& cfg, bool fold) {
  if (d > cfg.max_dim) {
    throw DimensionError("integrate_cube: dimension " + std::to_string(d) + " exceeds max_dim " +
                         std::to_string(cfg.max_dim));
  }
  if (exponents.size() != d) {
    throw std::invalid_argument("integrate_cube: need one exponent pair per dimension");
  }
  std::vector<double> u(d, 0.5);
  std::vector<double> c(d, 0.5);
  if (d == 0) return f(std::span<const double>(u), std::span<const double>(c));
  for (const auto& e : exponents) {
    if (!(e.left > -1.0) || !(e.right > -1.0)) {
      throw std::domain_error("integrate_cube: endpoint exponents must exceed -1");
    }
  }

  // Tensor product of tanh-sinh rules sharing one step h; the whole grid is
  // re-summed at each halving of h and the change between levels is the error estimate.
  std::vector<std::pair<double, double>> ranges;
  for (const auto& e : exponents) {
    ranges.emplace_back(truncation(e.left, cfg.rel_tol), truncation(e.right, cfg.rel_tol));
  }
  std::vector<std::vector<Node>> axes(d);
  double prev = std::numeric_limits<double>::quiet_NaN();
  double err = std::numeric_limits<double>::infinity();
  double last_diff = std::numeric_limits<double>::infinity();
  double h = 1.0;
  for (int level = 0; level <= kMaxLevel; ++level, h *= 0.5) {
    bool over_budget = false;
    for (std::size_t a = 0; a < d; ++a) {
      axes[a].clear();
      const int lo = static_cast<int>(std::floor(ranges[a].first / h));
      const int hi = static_cast<int>(std::floor(ranges[a].second / h));
      for (int k = -lo; k <= hi; ++k) {
        Node n = node_at(k * h);
        if (!(n.u > 0.0 && n.c > 0.0 && n.w > 0.0)) continue;
        if (fold) {
          n.w = std::exp(std::log(n.w) + exponents[a].left * std::log(n.u) +
                         exponents[a].right * std::log(n.c));
          if (!std::isfinite(n.w)) {
            throw QuadratureError("integrate_cube: endpoint weight overflow",
                                  std::numeric_limits<double>::quiet_NaN(),
                                  std::numeric_limits<double>::infinity());
          }
          if (n.w == 0.0) continue;
        }
        axes[a].push_back(n);
      }
      over_budget = over_budget || axes[a].size() > cfg.max_subdivisions;
    }
    if (level > 0 && over_budget) break;

    CompensatedSum total;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      double w = 1.0;
      for (std::size_t a = 0; a < d; ++a) {
        const Node& n = axes[a][idx[a]];
        u[a] = n.u;
        c[a] = n.c;
        w *= n.w;
      }
      const double v = f(std::span<const double>(u), std::span<const double>(c));
      if (!std::isfinite(v)) {
        throw QuadratureError("integrate_cube: non-finite integrand",
                              std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::infinity());
      }
      total.add(w * v);
      // Odometer increment, last axis fastest.
      std::size_t a = d;
      bool wrapped = true;
      while (a > 0) {
        --a;
        if (++idx[a] < axes[a].size()) {
          wrapped = false;
          break;
        }
        idx[a] = 0;
      }
      if (wrapped) break;
    }
    const double est = total.value() * std::pow(h, static_cast<double>(d));
    if (level > 0) {
      const double diff = std::abs(est - prev);
      // Digits roughly double per level, so once the differences shrink the
      // error of est is about diff^2/previous diff. Saves the last (2^d times
      // costlier) level.
      err = (level > 1 && diff < last_diff) ? std::max(diff * diff / last_diff, 1e-15 * std::abs(est))
                                             : diff;
      last_diff = diff;
      const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(est));
      if (level >= kMinLevel && err <= tol) return est;
    }
    prev = est;
  }
  throw QuadratureError("integrate_cube: node budget exhausted (estimate " + std::to_string(prev) +
                            ", error " + std::to_string(err) + ")",
                        prev, err);
}

}  // namespace

double integrate_cube(const CubeIntegrand& f, std::size_t d,
                      std::span<const EndpointExponents> exponents, const QuadratureConfig& cfg) {
  return cube_driver(f, d, exponents, cfg, false);
}

double integrate_cube_weighted(const CubeIntegrand& f, std::size_t d,
                               std::span<const EndpointExponents> exponents,
                               const QuadratureConfig& cfg) {
  return cube_driver(f, d, exponents, cfg, true);
}

}  // namespace ggc
