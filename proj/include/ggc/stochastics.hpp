#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ggc/gammaconv.hpp"

namespace ggc {

struct Seed {
  std::uint64_t value = 0;
};

struct Sample {
  std::vector<double> values;
  std::string provenance;
};

/// Deterministic variate source on top of std::mt19937_64. The transforms are
/// implemented here rather than taken from <random> distributions so that
/// streams are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(Seed seed);
  /// Uniform on the open interval (0,1).
  double uniform();
  double normal();
  /// Gamma(shape, 1): Marsaglia–Tsang, boosted by U^{1/shape} for shape < 1.
  double standard_gamma(double shape);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Independent child seed for substream `index`.
Seed derive_seed(Seed parent, std::uint64_t index);

Sample sample_gamma(const GammaComponent& c, std::size_t n, Seed seed);
Sample sample_ggc(const GammaConvolution& gc, std::size_t n, Seed seed);

enum class Combine { Sum, Product };

/// Draws X_i from each (unshifted) model independently and returns Σ X_i^{q_i} or Π X_i^{q_i}.
Sample sample_power_product(const std::vector<GammaConvolution>& gcs, const std::vector<double>& qs,
                            Combine mode, std::size_t n, Seed seed);

/// Y^{1/alpha} · Z with Y drawn from the (unshifted) model and Z standard normal.
Sample sample_sym_eggc(const GammaConvolution& gc, double alpha, std::size_t n, Seed seed);

/// Coupled draws of e^a((1 + r(X-a))^{1/r} - 1) and e^X - e^a from one X ~ gc per index.
std::pair<Sample, Sample> exp_limit_pair(const GammaConvolution& gc, double r, std::size_t n,
                                         Seed seed);

/// Two-sample Kolmogorov–Smirnov statistic.
double ks_distance(const Sample& a, const Sample& b);
/// One-sample statistic against a continuous CDF.
double ks_distance(const Sample& a, const std::function<double(double)>& cdf);

double sample_mean(const Sample& s);
double sample_variance(const Sample& s);

/// CSV with a provenance header and one value per line at 17 significant digits.
void write_csv(const Sample& s, std::ostream& out);

}  // namespace ggc
