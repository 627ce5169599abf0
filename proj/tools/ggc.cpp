#include <iostream>

#include "CLI11.hpp"
#include "ggc/commands.hpp"

namespace {

struct Flags {
  bool model = false;
  bool q = false;
  bool grid = false;
  bool seed = false;
  bool tol = false;
  bool max_order = false;
  bool beta = false;
  bool n = false;
  bool qs = false;
  bool corpus = false;
  bool inject = false;
};

void add_common(CLI::App* sub, ggc::cli::RunManifest& m, const Flags& f) {
  if (f.model) sub->add_option("--model", m.model, "model JSON file (or builtin:uniform|gauss|exp)");
  if (f.q) sub->add_option("--q", m.q, "power exponent q >= 1");
  if (f.grid) sub->add_option("--grid", m.grid, "start:stop:count or comma list");
  if (f.seed) sub->add_option("--seed", m.seed, "RNG seed");
  if (f.tol) sub->add_option("--tol", m.tol, "tolerance");
  if (f.max_order) sub->add_option("--max-order", m.max_order, "highest difference order");
  if (f.beta) sub->add_option("--beta", m.beta, "Bessel order / shape parameter");
  if (f.n) sub->add_option("--n", m.n, "sample size");
  if (f.qs) sub->add_option("--qs", m.qs, "comma list of exponents");
  if (f.corpus) sub->add_option("--corpus", m.corpus, "JSON file {\"models\":[...]}");
  if (f.inject) sub->add_flag("--inject-negative", m.inject_negative, "add a known non-HCM row");
  sub->add_option("--out", m.out, "CSV output file (default stdout)");
  sub->add_option("--report", m.report, "JSON report file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized gamma convolutions: densities, transforms, monotonicity checks"};
  app.require_subcommand(1);
  ggc::cli::RunManifest m;

  struct Entry {
    const char* name;
    const char* help;
    Flags flags;
  };
  const Entry entries[] = {
      {"density", "density of a gamma convolution on a grid", {.model = true, .grid = true, .tol = true}},
      {"laplace", "Laplace transform of X or X^q", {.model = true, .q = true, .grid = true, .tol = true}},
      {"cm-test", "complete monotonicity check",
       {.model = true, .q = true, .grid = true, .tol = true, .max_order = true}},
      {"hcm-test", "hyperbolic complete monotonicity check",
       {.model = true, .q = true, .tol = true, .max_order = true}},
      {"remark3", "Bessel product identity", {.grid = true, .tol = true, .beta = true}},
      {"sample", "draw from X or X^q", {.model = true, .q = true, .seed = true, .n = true}},
      {"limit-check", "exponential limit of power transforms",
       {.model = true, .grid = true, .seed = true, .n = true}},
      {"power-suite", "run the power/product/limit checks",
       {.seed = true, .tol = true, .max_order = true, .n = true, .qs = true, .corpus = true,
        .inject = true}},
  };
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, m, e.flags);
    if (e.flags.model && std::string(e.name) != "remark3") sub->get_option("--model")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ggc::cli::kValidation;
  }
  m.command = app.get_subcommands().front()->get_name();
  return ggc::cli::run(m, std::cout, std::cerr);
}
