#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ggc/gammaconv.hpp"

namespace ggc::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kValidation = 2,
  kQuadrature = 3,
  kCheckFailed = 4,
  kInconclusive = 5,
};

struct RunManifest {
  std::string command;
  std::string model;  // model file path, or builtin:<name> where a transform is accepted
  std::optional<double> q;
  std::string grid;
  std::uint64_t seed = 1;
  std::string out;     // primary CSV table; stdout when empty
  std::string report;  // JSON report; not written when empty
  std::optional<double> tol;
  int max_order = 8;
  double beta = 1.0;
  std::size_t n = 100000;
  std::string qs = "1.5,2,3";
  std::string corpus;  // JSON {"models":[...]}; built-in corpus when empty
  bool inject_negative = false;
};

/// Parses "start:stop:count" (inclusive, linear) or a comma-separated list; "" is empty.
std::vector<double> parse_grid(const std::string& spec);

/// Models exercised by the power suite when no corpus file is given.
std::vector<GammaConvolution> default_corpus();

/// Dispatches on manifest.command. Diagnostics go to `err`; the primary table goes
/// to manifest.out or `out`.
int run(const RunManifest& manifest, std::ostream& out, std::ostream& err);

int cmd_density(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_laplace(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_cm_test(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_hcm_test(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_remark3(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_sample(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_limit_check(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_power_suite(const RunManifest& m, std::ostream& out, std::ostream& err);

}  // namespace ggc::cli
