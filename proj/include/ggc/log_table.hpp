#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace ggc {

/// Piecewise Chebyshev interpolant on [lo, hi], built by bisection until the
/// trailing coefficients of every panel fall below an absolute tolerance.
/// Used for log-densities, so an absolute tolerance is a relative one on the density.
class LogTable {
 public:
  static constexpr std::size_t kNodes = 20;

  LogTable() = default;
  static LogTable build(const std::function<double(double)>& fn, double lo, double hi,
                        double abs_tol = 1e-10, std::size_t max_panels = 4096);

  double operator()(double y) const;
  double lo() const { return breaks_.empty() ? 0.0 : breaks_.front(); }
  double hi() const { return breaks_.empty() ? 0.0 : breaks_.back(); }
  std::size_t panels() const { return coef_.size(); }
  bool empty() const { return coef_.empty(); }

 private:
  std::vector<double> breaks_;
  std::vector<std::array<double, kNodes>> coef_;
};

}  // namespace ggc
