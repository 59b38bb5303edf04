#pragma once

// Command-line front end over the C interface.
//
//   rtherm-cli <command> [options]
//   command: fixed-point | sweep | evolve | mc-validate | entropy-probe | flux
//
// Options may also come from a flat "key = value" file given with --config;
// keys are the long option names without the dashes. Command-line values win
// over the file, the file wins over the defaults, and unknown keys are
// rejected.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtherm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitDomain = 3,
  kExitNumerical = 4,
  kExitValidation = 5,
  kExitIo = 6,
};

// Malformed command line, config file or spec string.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input outside the domain of the computation it feeds.
class InputDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string profile = "gray:1";
  double beta = 0.0;
  double t0 = 1.0;
  double rel_tol = 1e-10;

  // flux
  double temperature = 0.0;  // 0 means T0

  // evolve and entropy-probe
  std::string eos = "cv:100";
  double volume = 1.0;
  double t_init = 0.5;
  double t_max = 1e4;
  double step_tol = 1e-8;
  std::vector<double> magnitudes = {0.0, 10.0, 20.0, 40.0};

  // sweep
  std::string axis = "beta";
  double from = 0.0;
  double to = 0.9;
  int points = 10;
  std::string scale = "linear";
  // Relative width Delta f / f of the band on the f axis.
  double band_rel_width = 1e-4;

  // mc-validate
  std::uint64_t seed = 42;
  std::uint64_t samples = 1000000;

  unsigned workers = 1;
  std::string output;  // empty: standard output
  std::string format;  // empty: json for mc-validate, csv otherwise
};

// Throws UsageError or InputDomainError. Returns normally for --help only
// after printing it, with command left empty.
RunConfig parse_config(int argc, const char* const* argv, std::ostream& out);

// Grid of a sweep, endpoints exact.
std::vector<double> sweep_grid(const RunConfig& cfg);

int run_fixed_point(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_mc_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_entropy_probe(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_flux(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Dispatches on cfg.command; writes to cfg.output when set.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Whole program: parse, run, map errors to exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

// %.17g
std::string format_double(double x);

}  // namespace rtherm::cli
