#include "ggc/log_table.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ggc {
namespace {

using Coefs = std::array<double, LogTable::kNodes>;

Coefs fit(const std::function<double(double)>& fn, double a, double b) {
  constexpr std::size_t n = LogTable::kNodes;
  std::array<double, n> values{};
  for (std::size_t k = 0; k < n; ++k) {
    const double t = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.5) / n);
    values[k] = fn(0.5 * (a + b) + 0.5 * (b - a) * t);
    if (!std::isfinite(values[k])) {
      throw std::runtime_error("LogTable: non-finite sample at " +
                               std::to_string(0.5 * (a + b) + 0.5 * (b - a) * t));
    }
  }
  Coefs c{};
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      s += values[k] * std::cos(std::numbers::pi * j * (static_cast<double>(k) + 0.5) / n);
    }
    c[j] = (j == 0 ? 1.0 : 2.0) * s / n;
  }
  return c;
}

double clenshaw(const Coefs& c, double t) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t j = c.size() - 1; j > 0; --j) {
    const double b0 = 2.0 * t * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c[0];
}

}  // namespace

LogTable LogTable::build(const std::function<double(double)>& fn, double lo, double hi,
                         double abs_tol, std::size_t max_panels) {
  if (!(hi > lo)) throw std::invalid_argument("LogTable: empty interval");
  LogTable table;
  table.breaks_.push_back(lo);
  const double min_width = (hi - lo) * 1e-9;
  // Depth-first over a stack so panels come out left to right.
  std::vector<std::pair<double, double>> todo = {{lo, hi}};
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    Coefs c = fit(fn, a, b);
    const double tail = std::max(std::abs(c[kNodes - 1]), std::abs(c[kNodes - 2]));
    if (tail <= abs_tol || b - a <= min_width) {
      table.breaks_.push_back(b);
      table.coef_.push_back(c);
      if (table.coef_.size() > max_panels) {
        throw std::runtime_error("LogTable: panel budget exhausted");
      }
      continue;
    }
    const double mid = 0.5 * (a + b);
    todo.emplace_back(mid, b);
    todo.emplace_back(a, mid);
  }
  return table;
}

double LogTable::operator()(double y) const {
  if (coef_.empty()) throw std::logic_error("LogTable: evaluating an empty table");
  if (y < breaks_.front() || y > breaks_.back()) {
    throw std::domain_error("LogTable: " + std::to_string(y) + " outside tabulated range [" +
                            std::to_string(breaks_.front()) + ", " +
                            std::to_string(breaks_.back()) + "]");
  }
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), y);
  std::size_t i = static_cast<std::size_t>(std::distance(breaks_.begin(), it));
  i = std::clamp<std::size_t>(i, 1, coef_.size()) - 1;
  const double a = breaks_[i];
  const double b = breaks_[i + 1];
  const double t = (2.0 * y - a - b) / (b - a);
  return clenshaw(coef_[i], t);
}

}  // namespace ggc
