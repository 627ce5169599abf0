#include "ggc/gammaconv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ggc/specfun.hpp"

namespace ggc {
namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

std::vector<double> shapes_of(const GammaConvolution& gc) {
  std::vector<double> out;
  out.reserve(gc.size());
  for (const auto& c : gc.components) out.push_back(c.shape);
  return out;
}

std::vector<double> rates_of(const GammaConvolution& gc) {
  std::vector<double> out;
  out.reserve(gc.size());
  for (const auto& c : gc.components) out.push_back(c.rate);
  return out;
}

void check_open_unit(std::span<const double> u, const char* who) {
  for (double v : u) {
    if (!(v > 0.0 && v < 1.0)) {
      throw std::domain_error(std::string(who) + ": coordinates must lie in (0,1), got " +
                              std::to_string(v));
    }
  }
}

// log ∫₀¹ exp(g(u, 1-u)) du where g already carries the algebraic endpoint factors.
// `offset` is subtracted inside the exponential and added back afterwards.
double log_unit_integral(const std::function<double(double, double)>& log_integrand,
                         EndpointExponents exponents, double offset,
                         const QuadratureConfig& cfg) {
  const double value = integrate_unit(
      [&](double u, double c) { return std::exp(log_integrand(u, c) - offset); }, exponents, cfg);
  if (!(value > 0.0)) {
    throw QuadratureError("log_unit_integral: nonpositive integral", value, 0.0);
  }
  return offset + std::log(value);
}

}  // namespace

void GammaComponent::validate() const {
  if (!positive_finite(shape)) {
    throw std::invalid_argument("GammaComponent: shape must be positive and finite");
  }
  if (!positive_finite(rate)) {
    throw std::invalid_argument("GammaComponent: rate must be positive and finite");
  }
}

void GammaConvolution::validate() const {
  if (components.empty()) throw std::invalid_argument("GammaConvolution: no components");
  for (const auto& c : components) c.validate();
  if (!std::isfinite(shift) || shift < 0.0) {
    throw std::invalid_argument("GammaConvolution: shift must be finite and nonnegative");
  }
}

double GammaConvolution::total_shape() const {
  return std::accumulate(components.begin(), components.end(), 0.0,
                         [](double acc, const GammaComponent& c) { return acc + c.shape; });
}

double GammaConvolution::min_rate() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : components) m = std::min(m, c.rate);
  return m;
}

double GammaConvolution::mean() const {
  double m = shift;
  for (const auto& c : components) m += c.shape / c.rate;
  return m;
}

void ThorinMeasure::validate() const {
  if (!std::isfinite(shift) || shift < 0.0) {
    throw std::invalid_argument("ThorinMeasure: shift must be finite and nonnegative");
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!positive_finite(atoms[i].location) || !positive_finite(atoms[i].mass)) {
      throw std::invalid_argument("ThorinMeasure: atoms need positive location and mass");
    }
    if (i > 0 && !(atoms[i].location > atoms[i - 1].location)) {
      throw std::invalid_argument("ThorinMeasure: locations must be strictly increasing");
    }
  }
}

PowerLaw::PowerLaw(double q) : q_(q), alpha_(1.0 / q) {
  if (!std::isfinite(q) || q < 1.0) throw std::invalid_argument("PowerLaw: q must be >= 1");
}

double log_gamma_density(const GammaComponent& c, double x) {
  c.validate();
  if (!(x > 0.0)) throw std::domain_error("gamma_density: x must be positive");
  return c.shape * std::log(c.rate) - log_gamma(c.shape) + (c.shape - 1.0) * std::log(x) -
         c.rate * x;
}

double gamma_density(const GammaComponent& c, double x) {
  return std::exp(log_gamma_density(c, x));
}

double density_pair(const GammaComponent& c1, const GammaComponent& c2, double x,
                    const QuadratureConfig& cfg) {
  c1.validate();
  c2.validate();
  if (!(x > 0.0)) throw std::domain_error("density_pair: x must be positive");
  const double b1 = c1.rate;
  const double b2 = c2.rate;
  const double bmin = std::min(b1, b2);
  const double log_pref = c1.shape * std::log(b1) + c2.shape * std::log(b2) -
                          log_gamma(c1.shape) - log_gamma(c2.shape) +
                          (c1.shape + c2.shape - 1.0) * std::log(x) - bmin * x;
  // e^{-x(b1(1-u) + b2 u)} (1-u)^{β1-1} u^{β2-1}
  const double integral = integrate_unit(
      [&](double u, double c) {
        return std::exp(-x * (b1 * c + b2 * u - bmin) + (c1.shape - 1.0) * std::log(c) +
                        (c2.shape - 1.0) * std::log(u));
      },
      {c2.shape - 1.0, c1.shape - 1.0}, cfg);
  return std::exp(log_pref) * integral;
}

std::vector<double> c_n_terms(std::span<const double> u, std::span<const double> rates) {
  if (rates.empty() || u.size() + 1 != rates.size()) {
    throw std::invalid_argument("c_n: need n rates and n-1 coordinates");
  }
  check_open_unit(u, "c_n");
  std::vector<double> terms;
  terms.reserve(rates.size());
  double prefix = 1.0;  // u_1 ⋯ u_{j-1}
  for (std::size_t j = 0; j < u.size(); ++j) {
    terms.push_back(rates[j] * prefix * (1.0 - u[j]));
    prefix *= u[j];
  }
  terms.push_back(rates.back() * prefix);
  return terms;
}

double c_n(std::span<const double> u, std::span<const double> rates) {
  const auto terms = c_n_terms(u, rates);
  return std::accumulate(terms.begin(), terms.end(), 0.0);
}

double log_b_n(std::span<const double> u, std::span<const double> shapes) {
  if (shapes.empty() || u.size() + 1 != shapes.size()) {
    throw std::invalid_argument("b_n: need n shapes and n-1 coordinates");
  }
  check_open_unit(u, "b_n");
  double total = 0.0;
  double log_norm = 0.0;
  for (double b : shapes) {
    if (!positive_finite(b)) throw std::invalid_argument("b_n: shapes must be positive");
    total += b;
    log_norm -= log_gamma(b);
  }
  log_norm += log_gamma(total);
  double tail = total;  // β_j + … + β_n
  double acc = log_norm;
  for (std::size_t j = 0; j < u.size(); ++j) {
    tail -= shapes[j];
    acc += (tail - 1.0) * std::log(u[j]) + (shapes[j] - 1.0) * std::log1p(-u[j]);
  }
  return acc;
}

double log_d_n(std::span<const double> shapes, std::span<const double> rates) {
  if (shapes.size() != rates.size() || shapes.empty()) {
    throw std::invalid_argument("d_n: shapes and rates must have equal nonzero length");
  }
  double total = 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (!positive_finite(shapes[i]) || !positive_finite(rates[i])) {
      throw std::invalid_argument("d_n: shapes and rates must be positive");
    }
    total += shapes[i];
    acc += shapes[i] * std::log(rates[i]);
  }
  return acc - log_gamma(total);
}

double density_range(const GammaConvolution& gc) {
  // Tail of Gamma(S, b_min), which dominates the sum: (b y)^{S-1} e^{-b y} below e^{-700}.
  const double s = gc.total_shape();
  const double b = gc.min_rate();
  double z = 720.0;
  for (int i = 0; i < 20; ++i) z = 720.0 + std::max(0.0, s - 1.0) * std::log(z);
  return 1.1 * z / b;
}

SumDensity::SumDensity(GammaConvolution gc, QuadratureConfig cfg, DensityMethod method,
                       double x_max)
    : gc_(std::move(gc)), cfg_(cfg), method_(method) {
  gc_.validate();
  cfg_.validate();
  const std::size_t n = gc_.size();
  if (method_ == DensityMethod::Auto) {
    method_ = (n - 1 <= cfg_.max_dim) ? DensityMethod::Direct : DensityMethod::Iterated;
  }
  if (method_ == DensityMethod::Direct && n - 1 > cfg_.max_dim) {
    throw DimensionError("SumDensity: " + std::to_string(n) +
                         " components need a cube of dimension above max_dim");
  }
  range_ = std::max(density_range(gc_), x_max - gc_.shift);
  if (method_ != DensityMethod::Iterated || n < 3) return;

  QuadratureConfig table_cfg = cfg_;
  table_cfg.rel_tol = std::min(cfg_.rel_tol, 1e-11);
  const auto& first = gc_.components.front();
  const double log_c1 = first.shape * std::log(first.rate) - log_gamma(first.shape);
  std::function<double(double)> previous = [log_c1, b = first.rate](double y) {
    return log_c1 - b * y;
  };
  double partial_shape = first.shape;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const GammaComponent comp = gc_.components[k];
    const double log_ck = comp.shape * std::log(comp.rate) - log_gamma(comp.shape);
    const double s_prev = partial_shape;
    auto step = [&, log_ck, comp, s_prev](double y) {
      const double offset = std::max({previous(y), previous(0.0) - comp.rate * y,
                                      previous(0.5 * y) - 0.5 * comp.rate * y});
      return log_ck + log_unit_integral(
                          [&](double u, double c) {
                            return previous(y * u) - comp.rate * y * c +
                                   (s_prev - 1.0) * std::log(u) +
                                   (comp.shape - 1.0) * std::log(c);
                          },
                          {s_prev - 1.0, comp.shape - 1.0}, offset, table_cfg);
    };
    partial_.push_back(LogTable::build(step, 0.0, range_));
    const LogTable* table = &partial_.back();
    previous = [table](double y) { return (*table)(y); };
    partial_shape += comp.shape;
  }
}

double SumDensity::log_smooth(double y) const {
  if (!(y >= 0.0)) throw std::domain_error("SumDensity: argument below the left extremity");
  if (y > range_) {
    throw std::domain_error("SumDensity: " + std::to_string(y) +
                            " beyond the evaluator range " + std::to_string(range_));
  }
  if (gc_.size() == 1) {
    const auto& c = gc_.components.front();
    return c.shape * std::log(c.rate) - log_gamma(c.shape) - c.rate * y;
  }
  return method_ == DensityMethod::Direct ? log_smooth_direct(y) : log_smooth_iterated(y);
}

double SumDensity::log_density(double x) const {
  const double y = x - gc_.shift;
  if (!(y > 0.0)) throw std::domain_error("density_sum: x must exceed the left extremity");
  return log_smooth(y) + (gc_.total_shape() - 1.0) * std::log(y);
}

double SumDensity::operator()(double x) const { return std::exp(log_density(x)); }

double SumDensity::log_smooth_direct(double y) const {
  const std::size_t n = gc_.size();
  const auto shapes = shapes_of(gc_);
  const auto rates = rates_of(gc_);
  const double bmin = gc_.min_rate();
  double log_norm = log_d_n(shapes, rates) + log_gamma(gc_.total_shape());
  for (double b : shapes) log_norm -= log_gamma(b);

  std::vector<EndpointExponents> exps(n - 1);
  double tail = gc_.total_shape();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    tail -= shapes[j];
    exps[j] = {tail - 1.0, shapes[j] - 1.0};
  }
  const double integral = integrate_cube_weighted(
      [&](std::span<const double> u, std::span<const double> c) {
        double prefix = 1.0;
        double rate_mix = 0.0;
        for (std::size_t j = 0; j + 1 < n; ++j) {
          rate_mix += rates[j] * prefix * c[j];
          prefix *= u[j];
        }
        rate_mix += rates[n - 1] * prefix;
        return std::exp(-y * (rate_mix - bmin));
      },
      n - 1, exps, cfg_);
  if (!(integral > 0.0)) throw QuadratureError("density_sum: nonpositive integral", integral, 0.0);
  return log_norm - bmin * y + std::log(integral);
}

double SumDensity::log_smooth_iterated(double y) const {
  const GammaComponent& last = gc_.components.back();
  double s_prev = gc_.total_shape() - last.shape;
  std::function<double(double)> previous;
  if (partial_.empty()) {
    const auto& first = gc_.components.front();
    const double log_c1 = first.shape * std::log(first.rate) - log_gamma(first.shape);
    previous = [log_c1, b = first.rate](double v) { return log_c1 - b * v; };
  } else {
    const LogTable* table = &partial_.back();
    previous = [table](double v) { return (*table)(v); };
  }
  const double log_c = last.shape * std::log(last.rate) - log_gamma(last.shape);
  const double offset = std::max({previous(y), previous(0.0) - last.rate * y,
                                  previous(0.5 * y) - 0.5 * last.rate * y});
  return log_c + log_unit_integral(
                     [&](double u, double c) {
                       return previous(y * u) - last.rate * y * c + (s_prev - 1.0) * std::log(u) +
                              (last.shape - 1.0) * std::log(c);
                     },
                     {s_prev - 1.0, last.shape - 1.0}, offset, cfg_);
}

double density_sum(const GammaConvolution& gc, double x, const QuadratureConfig& cfg) {
  return SumDensity(gc, cfg, DensityMethod::Auto, x)(x);
}

double density_sum_direct(const GammaConvolution& gc, double x, const QuadratureConfig& cfg) {
  return SumDensity(gc, cfg, DensityMethod::Direct, x)(x);
}

double density_sum_iterated(const GammaConvolution& gc, double x, const QuadratureConfig& cfg) {
  return SumDensity(gc, cfg, DensityMethod::Iterated, x)(x);
}

double power_moment(const GammaConvolution& gc, double p, const QuadratureConfig& cfg) {
  const double total = gc.total_shape();
  if (!(p > -total)) throw std::domain_error("power_moment: moment order must exceed -sum(shape)");
  const SumDensity density(gc, cfg);
  return integrate_halfline(
      [&](double y) {
        if (y >= density.range()) return 0.0;
        return std::exp(p * std::log(y) + density.log_density(gc.shift + y));
      },
      cfg, std::min(0.0, p + total - 1.0));
}

double laplace_exact(const GammaConvolution& gc, double s) {
  gc.validate();
  if (!(s >= 0.0)) throw std::domain_error("laplace_exact: s must be nonnegative");
  double log_phi = -gc.shift * s;
  for (const auto& c : gc.components) log_phi -= c.shape * std::log1p(s / c.rate);
  return std::exp(log_phi);
}

ThorinMeasure to_thorin(const GammaConvolution& gc) {
  gc.validate();
  ThorinMeasure tm;
  tm.shift = gc.shift;
  for (const auto& c : gc.components) tm.atoms.push_back({c.rate, c.shape});
  std::sort(tm.atoms.begin(), tm.atoms.end(),
            [](const ThorinAtom& a, const ThorinAtom& b) { return a.location < b.location; });
  std::vector<ThorinAtom> merged;
  for (const auto& a : tm.atoms) {
    if (!merged.empty() && merged.back().location == a.location) {
      merged.back().mass += a.mass;
    } else {
      merged.push_back(a);
    }
  }
  tm.atoms = std::move(merged);
  return tm;
}

double thorin_laplace(const ThorinMeasure& tm, double s) {
  tm.validate();
  if (!(s >= 0.0)) throw std::domain_error("thorin_laplace: s must be nonnegative");
  double log_phi = -tm.shift * s;
  for (const auto& a : tm.atoms) log_phi -= a.mass * std::log1p(s / a.location);
  return std::exp(log_phi);
}

PowerLaplace::PowerLaplace(const GammaConvolution& gc, PowerLaw power, QuadratureConfig cfg)
    : total_shape_(gc.total_shape()), power_(power), cfg_(cfg) {
  gc.validate();
  if (gc.shift != 0.0) throw UnsupportedShift("laplace_power: model must have zero shift");
  // The weight is tabulated once; pointwise cube evaluation at every quadrature
  // node of every transform argument would dominate the cost.
  const SumDensity density(gc, cfg, gc.size() == 1 ? DensityMethod::Direct
                                                   : DensityMethod::Iterated);
  log_smooth_ = LogTable::build([&](double y) { return density.log_smooth(y); }, 0.0,
                                density.range());
}

double PowerLaplace::operator()(double s) const {
  if (!(s >= 0.0)) throw std::domain_error("laplace_power: s must be nonnegative");
  const double q = power_.q();
  const double hi = log_smooth_.hi();
  const double value = integrate_halfline(
      [&](double x) {
        if (x >= hi) return 0.0;
        return std::exp(-s * std::pow(x, q) + (total_shape_ - 1.0) * std::log(x) + log_smooth_(x));
      },
      cfg_, total_shape_ - 1.0);
  return std::clamp(value, std::numeric_limits<double>::min(), 1.0);
}

double laplace_power(const GammaConvolution& gc, const PowerLaw& p, double s,
                     const QuadratureConfig& cfg) {
  return PowerLaplace(gc, p, cfg)(s);
}

}  // namespace ggc
