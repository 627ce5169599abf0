#include "ggc/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "ggc/monotone.hpp"
#include "ggc/remark3.hpp"
#include "ggc/serialization.hpp"
#include "ggc/stochastics.hpp"

namespace ggc::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes the primary table to m.out when set, otherwise to `fallback`.
void emit(const RunManifest& m, std::ostream& fallback, const std::string& text) {
  if (m.out.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(m.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + m.out);
  file << text;
}

void emit_report(const RunManifest& m, const json& report) {
  if (m.report.empty()) return;
  std::ofstream file(m.report, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + m.report);
  file << dump(report) << '\n';
}

QuadratureConfig quadrature_config(const RunManifest& m) {
  QuadratureConfig cfg;
  if (m.tol) cfg.rel_tol = *m.tol;
  cfg.validate();
  return cfg;
}

json manifest_json(const RunManifest& m) {
  json j{{"command", m.command}, {"model", m.model}, {"grid", m.grid}, {"seed", m.seed}};
  if (m.q) j["q"] = *m.q;
  if (m.tol) j["tol"] = *m.tol;
  return j;
}

constexpr const char* kBuiltinPrefix = "builtin:";

struct Transform {
  std::function<double(double)> fn;
  std::string name;
  double value_noise = 0.0;
  std::shared_ptr<PowerLaplace> power;  // keeps the tabulated density alive
};

Transform builtin_transform(const std::string& name) {
  if (name == "uniform") {
    return {[](double s) { return -std::expm1(-s) / s; }, "builtin:uniform", 0.0, nullptr};
  }
  if (name == "gauss") return {[](double s) { return std::exp(-s * s); }, "builtin:gauss", 0.0, nullptr};
  if (name == "exp") return {[](double s) { return std::exp(-s); }, "builtin:exp", 0.0, nullptr};
  throw ValidationError("unknown builtin transform '" + name + "' (uniform, gauss, exp)");
}

Transform model_transform(const GammaConvolution& gc, std::optional<double> q,
                          const QuadratureConfig& cfg, const std::string& name) {
  if (!q) return {[gc](double s) { return laplace_exact(gc, s); }, name, 0.0, nullptr};
  auto power = std::make_shared<PowerLaplace>(gc, PowerLaw(*q), cfg);
  return {[power](double s) { return (*power)(s); }, name + "^" + num(*q), cfg.rel_tol, power};
}

Transform resolve_transform(const RunManifest& m, const QuadratureConfig& cfg) {
  if (m.model.rfind(kBuiltinPrefix, 0) == 0) {
    if (m.q) throw ValidationError("--q cannot be combined with a builtin transform");
    return builtin_transform(m.model.substr(std::string(kBuiltinPrefix).size()));
  }
  return model_transform(load_gamma_convolution(m.model), m.q, cfg, m.model);
}

std::string report_header() {
  return "label,verdict,worst_margin,order,point,step,persistent_violations\n";
}

std::string report_row(const CMReport& r, const std::string& label) {
  return label + "," + to_string(r.verdict) + "," + num(r.worst_margin) + "," +
         std::to_string(r.worst_location.order) + "," + num(r.worst_location.point) + "," +
         num(r.worst_location.step) + "," + std::to_string(r.persistent_violations) + "\n";
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kOk;
    case Verdict::Fail: return kCheckFailed;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kError;
}

std::vector<double> parse_list(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("malformed number '" + item + "'");
    }
    if (used != item.size()) throw ValidationError("malformed number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  if (spec.empty()) return {};
  if (spec.find(':') == std::string::npos) return parse_list(spec);
  std::stringstream ss(spec);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c, ':')) {
    throw ValidationError("grid must be start:stop:count or a comma list");
  }
  const double start = parse_list(a).at(0);
  const double stop = parse_list(b).at(0);
  const double count_d = parse_list(c).at(0);
  if (count_d < 0 || count_d != std::floor(count_d)) {
    throw ValidationError("grid count must be a nonnegative integer");
  }
  const auto count = static_cast<std::size_t>(count_d);
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(count == 1 ? start
                             : start + (stop - start) * static_cast<double>(i) /
                                           static_cast<double>(count - 1));
  }
  return out;
}

std::vector<GammaConvolution> default_corpus() {
  return {
      {{{0.5, 1.0}}, 0.0},
      {{{1.0, 1.0}}, 0.0},
      {{{1.5, 2.0}}, 0.0},
      {{{1.0, 1.0}, {1.0, 2.0}}, 0.0},
      {{{0.5, 1.0}, {1.5, 3.0}}, 0.0},
      {{{1.5, 0.5}, {0.5, 2.0}}, 0.0},
      {{{0.5, 1.0}, {1.0, 2.0}, {1.5, 3.0}}, 0.0},
      {{{1.0, 0.5}, {0.5, 1.5}, {1.5, 4.0}}, 0.0},
  };
}

int cmd_density(const RunManifest& m, std::ostream& out, std::ostream&) {
  const auto cfg = quadrature_config(m);
  const auto gc = load_gamma_convolution(m.model);
  const auto grid = parse_grid(m.grid);
  double x_max = 0.0;
  for (double x : grid) {
    if (!(x > gc.shift)) throw ValidationError("density grid must lie above the left extremity");
    x_max = std::max(x_max, x);
  }
  std::string table = "x,density\n";
  json rows = json::array();
  if (!grid.empty()) {
    const SumDensity density(gc, cfg, DensityMethod::Auto, x_max);
    for (double x : grid) {
      const double f = density(x);
      table += num(x) + "," + num(f) + "\n";
      rows.push_back({x, f});
    }
  }
  emit(m, out, table);
  emit_report(m, {{"manifest", manifest_json(m)}, {"model", gc}, {"rows", rows}});
  return kOk;
}

int cmd_laplace(const RunManifest& m, std::ostream& out, std::ostream&) {
  const auto cfg = quadrature_config(m);
  const auto gc = load_gamma_convolution(m.model);
  const auto grid = parse_grid(m.grid);
  for (double s : grid) {
    if (!(s >= 0.0)) throw ValidationError("laplace grid must be nonnegative");
  }
  const Transform t = model_transform(gc, m.q, cfg, m.model);
  std::string table = "s,laplace\n";
  json rows = json::array();
  for (double s : grid) {
    const double v = t.fn(s);
    table += num(s) + "," + num(v) + "\n";
    rows.push_back({s, v});
  }
  emit(m, out, table);
  emit_report(m, {{"manifest", manifest_json(m)},
                  {"model", gc},
                  {"thorin", to_thorin(gc)},
                  {"rows", rows}});
  return kOk;
}

int cmd_cm_test(const RunManifest& m, std::ostream& out, std::ostream&) {
  const auto cfg = quadrature_config(m);
  const Transform t = resolve_transform(m, cfg);
  Window window{0.1, 10.0};
  CMOptions options;
  options.value_noise = t.value_noise;
  if (!m.grid.empty()) {
    const auto g = parse_grid(m.grid);
    if (g.size() < 2) throw ValidationError("cm-test grid needs at least two points");
    window = {g.front(), g.back()};
    options.points = g.size();
  }
  const double tol = m.tol.value_or(1e-6);
  const CMReport r = cm_check(t.fn, window, m.max_order, tol, options);
  emit(m, out, report_header() + report_row(r, t.name));
  emit_report(m, {{"manifest", manifest_json(m)}, {"report", r}});
  return verdict_code(r.verdict);
}

int cmd_hcm_test(const RunManifest& m, std::ostream& out, std::ostream&) {
  const QuadratureConfig cfg;
  const Transform t = resolve_transform(m, cfg);
  HCMConfig hcfg;
  hcfg.max_order = m.max_order;
  if (m.tol) hcfg.rel_tol = *m.tol;
  hcfg.value_noise = t.value_noise;
  const CMReport r = hcm_check(t.fn, hcfg);
  std::string table = report_header();
  for (const auto& part : r.parts) table += report_row(part, part.label);
  table += report_row(r, "all");
  emit(m, out, table);
  emit_report(m, {{"manifest", manifest_json(m)}, {"transform", t.name}, {"report", r}});
  return verdict_code(r.verdict);
}

int cmd_remark3(const RunManifest& m, std::ostream& out, std::ostream&) {
  const auto cfg = quadrature_config(m);
  if (!(m.beta > 0.0)) throw ValidationError("--beta must be positive");
  const auto grid = parse_grid(m.grid.empty() ? "0.5:2:7" : m.grid);
  for (double y : grid) {
    if (!(y > 0.0)) throw ValidationError("remark3 grid must be positive");
  }
  const PairInnerIntegral setting = remark3_setting(m.beta);
  const PairInnerIntegral reference = remark3_setting(1.0);
  const double calibrated = reference(1.0, cfg) / remark3_bessel_product(1.0, 1.0);

  std::string table = "y,lhs,rhs,ratio\n";
  json rows = json::array();
  double lo = INFINITY;
  double hi = -INFINITY;
  for (double y : grid) {
    const double lhs = setting(y, cfg);
    const double rhs = remark3_bessel_product(m.beta, y);
    const double ratio = lhs / rhs;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    table += num(y) + "," + num(lhs) + "," + num(rhs) + "," + num(ratio) + "\n";
    rows.push_back({y, lhs, rhs, ratio});
  }
  emit(m, out, table);
  json report{{"manifest", manifest_json(m)},
              {"beta", m.beta},
              {"bessel_order", m.beta},
              {"gamma_shape", setting.shape},
              {"rates", {setting.b1, setting.b2}},
              {"x_scale", setting.x},
              {"alpha", setting.alpha},
              {"calibrated_constant_beta1", calibrated},
              {"rows", rows}};
  if (!grid.empty()) {
    report["ratio_min"] = lo;
    report["ratio_max"] = hi;
    report["relative_spread"] = (hi - lo) / std::abs(lo);
  }
  emit_report(m, report);
  return kOk;
}

int cmd_sample(const RunManifest& m, std::ostream& out, std::ostream&) {
  const auto gc = load_gamma_convolution(m.model);
  const Seed seed{m.seed};
  const Sample s = m.q ? sample_power_product({gc}, {*m.q}, Combine::Sum, m.n, seed)
                       : sample_ggc(gc, m.n, seed);
  std::ostringstream csv;
  write_csv(s, csv);
  emit(m, out, csv.str());
  json report{{"manifest", manifest_json(m)},
              {"n", s.values.size()},
              {"provenance", s.provenance},
              {"mean", sample_mean(s)}};
  if (s.values.size() > 1) report["variance"] = sample_variance(s);
  emit_report(m, report);
  return kOk;
}

namespace {

struct LimitResult {
  std::vector<double> rs;
  std::vector<double> ks;
  bool decreasing = true;
  bool pass = false;
};

LimitResult limit_sweep(const GammaConvolution& gc, const std::vector<double>& rs, std::size_t n,
                        Seed seed) {
  LimitResult res;
  res.rs = rs;
  for (double r : rs) {
    const auto [power, expo] = exp_limit_pair(gc, r, n, seed);
    res.ks.push_back(ks_distance(power, expo));
  }
  for (std::size_t i = 1; i < res.ks.size(); ++i) {
    res.decreasing = res.decreasing && res.ks[i] < res.ks[i - 1];
  }
  res.pass = !res.ks.empty() && res.decreasing && res.ks.back() < 0.01;
  return res;
}

}  // namespace

int cmd_limit_check(const RunManifest& m, std::ostream& out, std::ostream&) {
  const auto gc = load_gamma_convolution(m.model);
  const auto rs = parse_grid(m.grid.empty() ? "0.3,0.1,0.03,0.01" : m.grid);
  for (double r : rs) {
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("limit-check r values must lie in (0,1)");
  }
  const LimitResult res = limit_sweep(gc, rs, m.n, Seed{m.seed});
  std::string table = "r,ks\n";
  for (std::size_t i = 0; i < rs.size(); ++i) table += num(rs[i]) + "," + num(res.ks[i]) + "\n";
  emit(m, out, table);
  emit_report(m, {{"manifest", manifest_json(m)},
                  {"model", gc},
                  {"r", res.rs},
                  {"ks", res.ks},
                  {"decreasing", res.decreasing},
                  {"pass", res.pass}});
  return res.pass ? kOk : kCheckFailed;
}

namespace {

struct SuiteRow {
  std::string check;
  std::string subject;
  std::string q;
  Verdict verdict = Verdict::Pass;
  double value = 0.0;
  double bound = 0.0;
  Verdict expected = Verdict::Pass;
};

std::string model_label(const GammaConvolution& gc) {
  std::string s;
  for (std::size_t i = 0; i < gc.components.size(); ++i) {
    s += (i ? "+" : "") + std::string("G(") + num(gc.components[i].shape) + ";" +
         num(gc.components[i].rate) + ")";
  }
  return s;
}

std::vector<GammaConvolution> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open corpus file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("corpus is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("models") || !j.at("models").is_array()) {
    throw ValidationError("corpus must be an object with a \"models\" array");
  }
  std::vector<GammaConvolution> out;
  for (const auto& mj : j.at("models")) out.push_back(gamma_convolution_from_json(mj));
  return out;
}

SuiteRow within_bands(std::string check, std::string subject, std::string q, double estimate,
                      double target, double se) {
  SuiteRow row{std::move(check), std::move(subject), std::move(q)};
  row.value = std::abs(estimate - target);
  row.bound = 4.0 * se;
  row.verdict = row.value <= row.bound ? Verdict::Pass : Verdict::Fail;
  return row;
}

double variance_standard_error(const Sample& s) {
  const double mean = sample_mean(s);
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : s.values) {
    const double d = (v - mean) * (v - mean);
    m2 += d;
    m4 += d * d;
  }
  const double n = static_cast<double>(s.values.size());
  m2 /= n;
  m4 /= n;
  return std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
}

}  // namespace

int cmd_power_suite(const RunManifest& m, std::ostream& out, std::ostream& err) {
  const QuadratureConfig cfg;
  const auto corpus = m.corpus.empty() ? default_corpus() : load_corpus(m.corpus);
  const auto qs = parse_list(m.qs);
  for (double q : qs) (void)PowerLaw(q);
  HCMConfig hcfg;
  hcfg.max_order = m.max_order;
  if (m.tol) hcfg.rel_tol = *m.tol;

  std::vector<SuiteRow> rows;
  auto hcm_row = [&](const std::string& check, const std::string& subject, const std::string& q,
                     const Transform& t, Verdict expected = Verdict::Pass) {
    HCMConfig local = hcfg;
    local.value_noise = t.value_noise;
    const CMReport r = hcm_check(t.fn, local);
    rows.push_back({check, subject, q, r.verdict, r.worst_margin, -local.rel_tol, expected});
    err << check << " " << subject << " q=" << q << ": " << to_string(r.verdict) << "\n";
  };

  // Powers: q = 1 sanity rows plus every requested exponent.
  for (const auto& gc : corpus) {
    const std::string label = model_label(gc);
    hcm_row("hcm", label, "1", model_transform(gc, std::nullopt, cfg, label));
    for (double q : qs) hcm_row("hcm", label, num(q), model_transform(gc, q, cfg, label));
  }
  // (1 - e^{-s})/s is CM but not HCM; the sweep must reject it.
  if (m.inject_negative) {
    hcm_row("hcm", "builtin:uniform", "1", builtin_transform("uniform"), Verdict::Fail);
  }

  // Sums and products of powers.
  const GammaConvolution g_half{{{0.5, 1.0}}, 0.0};
  const GammaConvolution g_pair{{{1.0, 1.0}, {1.0, 2.0}}, 0.0};
  const std::vector<GammaConvolution> pair_models = {g_half, g_pair};
  const std::vector<double> pair_qs = {1.5, 2.0};
  const double mom_a = power_moment(g_half, pair_qs[0], cfg);
  const double mom_b = power_moment(g_pair, pair_qs[1], cfg);
  const std::string pair_subject = model_label(g_half) + "&" + model_label(g_pair);
  {
    const Sample s = sample_power_product(pair_models, pair_qs, Combine::Sum, m.n,
                                          derive_seed(Seed{m.seed}, 1));
    rows.push_back(within_bands("power-sum-mean", pair_subject, "1.5;2", sample_mean(s),
                                mom_a + mom_b,
                                std::sqrt(sample_variance(s) / static_cast<double>(m.n))));
  }
  {
    const Sample s = sample_power_product(pair_models, pair_qs, Combine::Product, m.n,
                                          derive_seed(Seed{m.seed}, 2));
    rows.push_back(within_bands("power-product-mean", pair_subject, "1.5;2", sample_mean(s),
                                mom_a * mom_b,
                                std::sqrt(sample_variance(s) / static_cast<double>(m.n))));
  }

  // Symmetric extended GGC variances.
  std::uint64_t stream = 10;
  for (const auto& gc : pair_models) {
    for (double alpha : {1.0, 2.0}) {
      const Sample s = sample_sym_eggc(gc, alpha, m.n, derive_seed(Seed{m.seed}, stream++));
      rows.push_back(within_bands("symeggc-variance", model_label(gc), "alpha=" + num(alpha),
                                  sample_variance(s), power_moment(gc, 2.0 / alpha, cfg),
                                  variance_standard_error(s)));
    }
  }

  // Exponential limit.
  const std::vector<GammaConvolution> limit_models = {GammaConvolution{{{1.0, 1.0}}, 0.0},
                                                      GammaConvolution{{{0.5, 1.0}, {1.0, 2.0}}, 0.0}};
  for (const auto& gc : limit_models) {
    const auto res = limit_sweep(gc, {0.3, 0.1, 0.03, 0.01}, m.n, derive_seed(Seed{m.seed}, stream++));
    rows.push_back({"exp-limit-ks", model_label(gc), "r=0.01",
                    res.pass ? Verdict::Pass : Verdict::Fail, res.ks.back(), 0.01});
  }

  std::string table = "check,subject,q,verdict,expected,value,bound\n";
  json jrows = json::array();
  bool any_fail = false;
  bool any_inconclusive = false;
  for (const auto& r : rows) {
    table += r.check + "," + r.subject + "," + r.q + "," + to_string(r.verdict) + "," +
             to_string(r.expected) + "," + num(r.value) + "," + num(r.bound) + "\n";
    jrows.push_back({{"check", r.check},
                     {"subject", r.subject},
                     {"q", r.q},
                     {"verdict", to_string(r.verdict)},
                     {"expected", to_string(r.expected)},
                     {"value", r.value},
                     {"bound", r.bound}});
    any_fail = any_fail || (r.verdict != r.expected && r.verdict != Verdict::Inconclusive);
    any_inconclusive = any_inconclusive || r.verdict == Verdict::Inconclusive;
  }
  emit(m, out, table);
  emit_report(m, {{"manifest", manifest_json(m)}, {"rows", jrows}});
  if (any_fail) return kCheckFailed;
  return any_inconclusive ? kInconclusive : kOk;
}

int run(const RunManifest& m, std::ostream& out, std::ostream& err) {
  try {
    if (m.command == "density") return cmd_density(m, out, err);
    if (m.command == "laplace") return cmd_laplace(m, out, err);
    if (m.command == "cm-test") return cmd_cm_test(m, out, err);
    if (m.command == "hcm-test") return cmd_hcm_test(m, out, err);
    if (m.command == "remark3") return cmd_remark3(m, out, err);
    if (m.command == "sample") return cmd_sample(m, out, err);
    if (m.command == "limit-check") return cmd_limit_check(m, out, err);
    if (m.command == "power-suite") return cmd_power_suite(m, out, err);
    err << "unknown command '" << m.command << "'\n";
    return kValidation;
  } catch (const QuadratureError& e) {
    err << "quadrature failure: " << e.what() << "\n";
    return kQuadrature;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace ggc::cli
