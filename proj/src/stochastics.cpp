#include "ggc/stochastics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace ggc {

Rng::Rng(Seed seed) : engine_(seed.value) {}

double Rng::uniform() {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double x = 0.0;
  double y = 0.0;
  double r2 = 0.0;
  do {
    x = 2.0 * uniform() - 1.0;
    y = 2.0 * uniform() - 1.0;
    r2 = x * x + y * y;
  } while (r2 >= 1.0 || r2 == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(r2) / r2);
  spare_ = y * scale;
  has_spare_ = true;
  return x * scale;
}

double Rng::standard_gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("standard_gamma: shape must be positive");
  if (shape < 1.0) {
    // G(β) = G(β+1) · U^{1/β}, done in logs so tiny shapes do not underflow to 0 early.
    const double g = standard_gamma(shape + 1.0);
    return std::exp(std::log(g) + std::log(uniform()) / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double z = 0.0;
    double v = 0.0;
    do {
      z = normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
    if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
  }
}

Seed derive_seed(Seed parent, std::uint64_t index) {
  // splitmix64 finalizer over (parent, index)
  std::uint64_t z = parent.value + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return {z ^ (z >> 31)};
}

namespace {

void require_count(std::size_t n) {
  if (n < 1) throw std::invalid_argument("sampler: n must be >= 1");
}

std::string describe(const GammaConvolution& gc) {
  std::string s = "ggc(";
  char buf[64];
  for (std::size_t i = 0; i < gc.components.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%sGamma(%.17g;%.17g)", i ? "+" : "",
                  gc.components[i].shape, gc.components[i].rate);
    s += buf;
  }
  std::snprintf(buf, sizeof buf, ";shift=%.17g)", gc.shift);
  return s + buf;
}

// One draw of Σ Gamma(β_i, b_i) + shift, rate applied as pure scaling.
double draw_ggc(const GammaConvolution& gc, Rng& rng) {
  double x = gc.shift;
  for (const auto& c : gc.components) x += rng.standard_gamma(c.shape) / c.rate;
  return x;
}

void require_unshifted(const GammaConvolution& gc, const char* who) {
  if (gc.shift != 0.0) throw UnsupportedShift(std::string(who) + ": model must have zero shift");
}

}  // namespace

Sample sample_gamma(const GammaComponent& c, std::size_t n, Seed seed) {
  c.validate();
  require_count(n);
  Rng rng(seed);
  Sample s;
  s.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.values.push_back(rng.standard_gamma(c.shape) / c.rate);
  char buf[96];
  std::snprintf(buf, sizeof buf, "Gamma(%.17g;%.17g)", c.shape, c.rate);
  s.provenance = buf;
  return s;
}

Sample sample_ggc(const GammaConvolution& gc, std::size_t n, Seed seed) {
  gc.validate();
  require_count(n);
  Rng rng(seed);
  Sample s;
  s.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.values.push_back(draw_ggc(gc, rng));
  s.provenance = describe(gc);
  return s;
}

Sample sample_power_product(const std::vector<GammaConvolution>& gcs, const std::vector<double>& qs,
                            Combine mode, std::size_t n, Seed seed) {
  if (gcs.empty() || gcs.size() != qs.size()) {
    throw std::invalid_argument("sample_power_product: need equally many models and exponents");
  }
  require_count(n);
  for (const auto& gc : gcs) {
    gc.validate();
    require_unshifted(gc, "sample_power_product");
  }
  for (double q : qs) (void)PowerLaw(q);
  std::vector<Rng> streams;
  for (std::size_t i = 0; i < gcs.size(); ++i) streams.emplace_back(derive_seed(seed, i));

  Sample s;
  s.values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = mode == Combine::Sum ? 0.0 : 1.0;
    for (std::size_t i = 0; i < gcs.size(); ++i) {
      const double v = std::pow(draw_ggc(gcs[i], streams[i]), qs[i]);
      acc = mode == Combine::Sum ? acc + v : acc * v;
    }
    s.values.push_back(acc);
  }
  s.provenance = mode == Combine::Sum ? "sum" : "product";
  for (std::size_t i = 0; i < gcs.size(); ++i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "^%.17g", qs[i]);
    s.provenance += (i ? ";" : ":") + describe(gcs[i]) + buf;
  }
  return s;
}

Sample sample_sym_eggc(const GammaConvolution& gc, double alpha, std::size_t n, Seed seed) {
  gc.validate();
  require_unshifted(gc, "sample_sym_eggc");
  require_count(n);
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw std::invalid_argument("sample_sym_eggc: alpha must lie in (0,2]");
  }
  Rng ys(derive_seed(seed, 0));
  Rng zs(derive_seed(seed, 1));
  Sample s;
  s.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = draw_ggc(gc, ys);
    s.values.push_back(std::pow(y, 1.0 / alpha) * zs.normal());
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "symeggc(alpha=%.17g):", alpha);
  s.provenance = buf + describe(gc);
  return s;
}

std::pair<Sample, Sample> exp_limit_pair(const GammaConvolution& gc, double r, std::size_t n,
                                         Seed seed) {
  gc.validate();
  require_count(n);
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("exp_limit_pair: r must lie in (0,1)");
  Rng rng(seed);
  Sample power;
  Sample expo;
  power.values.reserve(n);
  expo.values.reserve(n);
  const double ea = std::exp(gc.shift);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = draw_ggc(gc, rng) - gc.shift;
    power.values.push_back(ea * std::expm1(std::log1p(r * y) / r));
    expo.values.push_back(ea * std::expm1(y));
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "powerlimit(r=%.17g):", r);
  power.provenance = buf + describe(gc);
  expo.provenance = "expshift:" + describe(gc);
  return {std::move(power), std::move(expo)};
}

double ks_distance(const Sample& a, const Sample& b) {
  if (a.values.empty() || b.values.empty()) {
    throw std::invalid_argument("ks_distance: samples must be nonempty");
  }
  std::vector<double> x = a.values;
  std::vector<double> y = b.values;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double ks_distance(const Sample& a, const std::function<double(double)>& cdf) {
  if (a.values.empty()) throw std::invalid_argument("ks_distance: sample must be nonempty");
  std::vector<double> x = a.values;
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double sample_mean(const Sample& s) {
  if (s.values.empty()) throw std::invalid_argument("sample_mean: empty sample");
  double acc = 0.0;
  for (double v : s.values) acc += v;
  return acc / static_cast<double>(s.values.size());
}

double sample_variance(const Sample& s) {
  if (s.values.size() < 2) throw std::invalid_argument("sample_variance: need two values");
  const double m = sample_mean(s);
  double acc = 0.0;
  for (double v : s.values) acc += (v - m) * (v - m);
  return acc / static_cast<double>(s.values.size() - 1);
}

void write_csv(const Sample& s, std::ostream& out) {
  out << s.provenance << '\n';
  char buf[32];
  for (double v : s.values) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
}

}  // namespace ggc
