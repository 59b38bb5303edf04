#include "cli.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "rtherm/rtherm.h"

namespace rtherm::cli {

namespace {

using Json = nlohmann::ordered_json;

// Failure reported by the library, carrying its status.
class StatusError : public std::runtime_error {
 public:
  StatusError(rtherm_status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  rtherm_status status() const noexcept { return status_; }

 private:
  rtherm_status status_;
};

int exit_code_for(rtherm_status status) {
  switch (status) {
    case RTHERM_OK: return kExitOk;
    case RTHERM_ERR_DOMAIN:
    case RTHERM_ERR_DEGENERATE_PROFILE:
    case RTHERM_ERR_DEGENERATE_PROBE:
    case RTHERM_ERR_NULL_ARGUMENT: return kExitDomain;
    case RTHERM_ERR_ACCURACY:
    case RTHERM_ERR_SOLVER:
    case RTHERM_ERR_STIFFNESS:
    case RTHERM_ERR_OVERFLOW: return kExitNumerical;
    case RTHERM_ERR_INTERNAL: break;
  }
  return kExitInternal;
}

void check(rtherm_status status) {
  if (status != RTHERM_OK) {
    throw StatusError(status, std::string(rtherm_status_name(status)) + ": " +
                                  rtherm_last_error());
  }
}

struct ProfileDeleter {
  void operator()(rtherm_profile* p) const { rtherm_profile_free(p); }
};
struct EosDeleter {
  void operator()(rtherm_eos* e) const { rtherm_eos_free(e); }
};
struct TrajectoryDeleter {
  void operator()(rtherm_trajectory* t) const { rtherm_trajectory_free(t); }
};
using Profile = std::unique_ptr<rtherm_profile, ProfileDeleter>;
using Eos = std::unique_ptr<rtherm_eos, EosDeleter>;
using Trajectory = std::unique_ptr<rtherm_trajectory, TrajectoryDeleter>;

// Library failures while building inputs are input problems.
void check_input(rtherm_status status, const std::string& what) {
  if (status == RTHERM_ERR_DOMAIN) {
    throw InputDomainError(what + ": " + rtherm_last_error());
  }
  check(status);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::optional<double> to_double(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

double spec_number(const std::string& token, const std::string& spec) {
  const auto v = to_double(token);
  if (!v) {
    throw UsageError("bad number '" + token + "' in spec '" + spec + "'");
  }
  return *v;
}

Profile read_piecewise(const std::string& path, const std::string& spec) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read breakpoint file '" + path + "' in spec '" + spec + "'");
  std::vector<double> omega, value;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (char& c : line) {
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    }
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    if (tokens.size() != 2) {
      throw UsageError(where + ": expected two columns, got '" + line + "'");
    }
    const auto w = to_double(tokens[0]);
    const auto a = to_double(tokens[1]);
    if (!w || !a) throw UsageError(where + ": bad number in '" + line + "'");
    omega.push_back(*w);
    value.push_back(*a);
  }
  rtherm_profile* p = nullptr;
  check_input(rtherm_profile_piecewise(omega.data(), value.data(), omega.size(), &p),
              "profile '" + spec + "'");
  return Profile(p);
}

Profile make_profile(const std::string& spec) {
  static const std::string piecewise = "piecewise:";
  if (spec.compare(0, piecewise.size(), piecewise) == 0) {
    const std::string path = spec.substr(piecewise.size());
    if (path.empty()) throw UsageError("missing path in profile spec '" + spec + "'");
    return read_piecewise(path, spec);
  }
  const auto parts = split(spec, ':');
  rtherm_profile* p = nullptr;
  if (parts[0] == "gray") {
    if (parts.size() != 2) {
      throw UsageError("profile spec '" + spec + "' should be gray:<a>");
    }
    check_input(rtherm_profile_gray(spec_number(parts[1], spec), &p),
                "profile '" + spec + "'");
  } else if (parts[0] == "band") {
    if (parts.size() != 3) {
      throw UsageError("profile spec '" + spec + "' should be band:<f>:<width>");
    }
    check_input(rtherm_profile_band(spec_number(parts[1], spec),
                                    spec_number(parts[2], spec), &p),
                "profile '" + spec + "'");
  } else {
    throw UsageError("unknown profile kind '" + parts[0] + "' in spec '" + spec +
                     "'; expected gray, band or piecewise");
  }
  return Profile(p);
}

Eos make_eos(const std::string& spec) {
  const auto parts = split(spec, ':');
  rtherm_eos* e = nullptr;
  if (parts[0] == "cv") {
    if (parts.size() != 2 && parts.size() != 4) {
      throw UsageError("eos spec '" + spec + "' should be cv:<C_V>[:<E_ref>:<S_ref>]");
    }
    const double cv = spec_number(parts[1], spec);
    const double e_ref = parts.size() == 4 ? spec_number(parts[2], spec) : 1.0;
    const double s_ref = parts.size() == 4 ? spec_number(parts[3], spec) : 0.0;
    check_input(rtherm_eos_constant_cv(cv, e_ref, s_ref, &e), "eos '" + spec + "'");
  } else if (parts[0] == "power") {
    if (parts.size() != 3) {
      throw UsageError("eos spec '" + spec + "' should be power:<a>:<alpha>");
    }
    check_input(rtherm_eos_power_law(spec_number(parts[1], spec),
                                     spec_number(parts[2], spec), &e),
                "eos '" + spec + "'");
  } else {
    throw UsageError("unknown eos kind '" + parts[0] + "' in spec '" + spec +
                     "'; expected cv or power");
  }
  return Eos(e);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InputDomainError(what);
}

void check_tolerance(double tol, const char* name) {
  require(std::isfinite(tol) && tol >= 1e-14 && tol <= 1e-2,
          std::string(name) + " must lie in [1e-14, 1e-2], got " + format_double(tol));
}

void check_beta(double beta, const std::string& name) {
  double gamma = 0.0;
  if (rtherm_boost_gamma(beta, &gamma) != RTHERM_OK) {
    throw InputDomainError(name + ": " + rtherm_last_error());
  }
}

void validate(const RunConfig& cfg) {
  check_beta(cfg.beta, "beta");
  require(std::isfinite(cfg.t0) && cfg.t0 > 0.0,
          "t0 must be positive, got " + format_double(cfg.t0));
  check_tolerance(cfg.rel_tol, "rel-tol");
  require(std::isfinite(cfg.temperature) && cfg.temperature >= 0.0,
          "temperature must be positive, got " + format_double(cfg.temperature));
  make_profile(cfg.profile);
  make_eos(cfg.eos);
  require(std::isfinite(cfg.volume) && cfg.volume > 0.0, "volume must be positive");
  require(std::isfinite(cfg.t_init) && cfg.t_init > 0.0, "t-init must be positive");
  require(std::isfinite(cfg.t_max) && cfg.t_max > 0.0, "t-max must be positive");
  check_tolerance(cfg.step_tol, "step-tol");
  require(!cfg.magnitudes.empty(), "magnitudes must not be empty");
  for (std::size_t i = 0; i < cfg.magnitudes.size(); ++i) {
    require(std::isfinite(cfg.magnitudes[i]) && cfg.magnitudes[i] >= 0.0,
            "magnitudes must be non-negative");
    require(i == 0 || cfg.magnitudes[i] > cfg.magnitudes[i - 1],
            "magnitudes must be strictly increasing");
  }
  require(cfg.points >= 2, "points must be at least 2");
  require(std::isfinite(cfg.from) && std::isfinite(cfg.to), "sweep range must be finite");
  if (cfg.scale == "log") {
    require(cfg.from > 0.0 && cfg.to > 0.0, "log sweep needs positive from and to");
  }
  if (cfg.axis == "beta") {
    check_beta(cfg.from, "from");
    check_beta(cfg.to, "to");
  } else if (cfg.axis == "t0" || cfg.axis == "f") {
    require(cfg.from > 0.0 && cfg.to > 0.0, cfg.axis + " sweep needs positive from and to");
  } else if (cfg.axis == "a") {
    require(cfg.from >= 0.0 && cfg.from <= 1.0 && cfg.to >= 0.0 && cfg.to <= 1.0,
            "a sweep needs from and to in [0, 1]");
  }
  require(std::isfinite(cfg.band_rel_width) && cfg.band_rel_width > 0.0 &&
              cfg.band_rel_width < 1.0,
          "band-rel-width must lie in (0, 1)");
  require(cfg.samples >= 1000, "samples must be at least 1000");
  require(cfg.workers >= 1, "workers must be at least 1");
}

std::string format_for(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  return cfg.command == "mc-validate" ? "json" : "csv";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }


}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

RunConfig parse_config(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Temperature registered by a clamped thermometer in a moving bath",
               "rtherm-cli"};
  app.set_version_flag("--version", rtherm_version());
  app.set_config("--config", "", "Read options from a key = value file");
  app.allow_config_extras(false);

  app.add_option("command", cfg.command, "Subcommand")
      ->required()
      ->check(CLI::IsMember({"fixed-point", "sweep", "evolve", "mc-validate",
                             "entropy-probe", "flux"}));
  app.add_option("--profile", cfg.profile,
                 "Absorption profile: gray:<a>, band:<f>:<width> or piecewise:<path>")
      ->capture_default_str();
  app.add_option("--beta", cfg.beta, "Bath speed in units of c")->capture_default_str();
  app.add_option("--t0", cfg.t0, "Bath rest-frame temperature")->capture_default_str();
  app.add_option("--rel-tol", cfg.rel_tol, "Relative tolerance of the solves")
      ->capture_default_str();
  app.add_option("--temperature", cfg.temperature,
                 "Thermometer temperature for emitted fluxes (default: t0)");
  app.add_option("--eos", cfg.eos,
                 "Equation of state: cv:<C_V>[:<E_ref>:<S_ref>] or power:<a>:<alpha>")
      ->capture_default_str();
  app.add_option("--volume", cfg.volume, "Thermometer volume")->capture_default_str();
  app.add_option("--t-init", cfg.t_init, "Initial thermometer temperature")
      ->capture_default_str();
  app.add_option("--t-max", cfg.t_max, "Integration horizon")->capture_default_str();
  app.add_option("--step-tol", cfg.step_tol, "Relative step tolerance")
      ->capture_default_str();
  app.add_option("--magnitudes", cfg.magnitudes, "Reservoir momentum magnitudes")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--axis", cfg.axis, "Sweep axis")
      ->check(CLI::IsMember({"beta", "t0", "f", "a"}))
      ->capture_default_str();
  app.add_option("--from", cfg.from, "First grid value")->capture_default_str();
  app.add_option("--to", cfg.to, "Last grid value")->capture_default_str();
  app.add_option("--points", cfg.points, "Number of grid points")->capture_default_str();
  app.add_option("--scale", cfg.scale, "Grid spacing")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
  app.add_option("--band-rel-width", cfg.band_rel_width,
                 "Band width relative to its centre on the f axis")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Monte Carlo samples")->capture_default_str();
  app.add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
  app.add_option("--output", cfg.output, "Output file (default: standard output)");
  app.add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return RunConfig{};
  } catch (const CLI::CallForVersion&) {
    out << rtherm_version() << '\n';
    return RunConfig{};
  } catch (const CLI::ConfigError& e) {
    throw UsageError(std::string("config file: ") + e.what() +
                     " (unknown key or malformed line)");
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  validate(cfg);
  return cfg;
}

std::vector<double> sweep_grid(const RunConfig& cfg) {
  std::vector<double> grid(cfg.points);
  const int last = cfg.points - 1;
  for (int i = 0; i <= last; ++i) {
    const double u = static_cast<double>(i) / last;
    grid[i] = cfg.scale == "log"
                  ? std::exp(std::log(cfg.from) + u * (std::log(cfg.to) - std::log(cfg.from)))
                  : cfg.from + u * (cfg.to - cfg.from);
  }
  grid.front() = cfg.from;
  grid.back() = cfg.to;
  return grid;
}

int run_fixed_point(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Profile profile = make_profile(cfg.profile);
  rtherm_equilibrium eq{};
  check(rtherm_solve_equilibrium(profile.get(), cfg.beta, cfg.t0, cfg.rel_tol, &eq));
  rtherm_comparators c{};
  check(rtherm_comparator_laws(cfg.beta, cfg.t0, &c));

  if (format_for(cfg) == "json") {
    Json j;
    j["profile"] = cfg.profile;
    j["beta"] = cfg.beta;
    j["t0"] = cfg.t0;
    j["t_bar"] = number(eq.t_bar);
    j["residual"] = number(eq.residual);
    j["iterations"] = eq.iterations;
    j["planck_einstein"] = number(c.planck_einstein);
    j["ott_kibble"] = number(c.ott_kibble);
    j["invariant"] = number(c.invariant);
    write_json(out, j);
  } else {
    write_csv_row(out, {"profile", "beta", "t0", "t_bar", "residual", "iterations",
                        "planck_einstein", "ott_kibble", "invariant"});
    write_csv_row(out, {cfg.profile, format_double(cfg.beta), format_double(cfg.t0),
                        format_double(eq.t_bar), format_double(eq.residual),
                        std::to_string(eq.iterations), format_double(c.planck_einstein),
                        format_double(c.ott_kibble), format_double(c.invariant)});
  }
  return kExitOk;
}

namespace {

struct SweepRow {
  double axis = 0.0;
  double t_bar = NAN;
  double phi_t_bar = NAN;
  double phi0 = NAN;
  double low = NAN;
  double high = NAN;
  rtherm_comparators laws{NAN, NAN, NAN};
  rtherm_status status = RTHERM_OK;
  std::string message;
};

SweepRow sweep_point(const RunConfig& cfg, double x) {
  SweepRow row;
  row.axis = x;
  double beta = cfg.beta;
  double t0 = cfg.t0;
  Profile profile;
  try {
    if (cfg.axis == "beta") beta = x;
    if (cfg.axis == "t0") t0 = x;
    rtherm_profile* p = nullptr;
    if (cfg.axis == "f") {
      check(rtherm_profile_band(x, x * cfg.band_rel_width, &p));
      profile.reset(p);
    } else if (cfg.axis == "a") {
      check(rtherm_profile_gray(x, &p));
      profile.reset(p);
    } else {
      profile = make_profile(cfg.profile);
    }
    check(rtherm_low_frequency_limit(beta, t0, &row.low));
    check(rtherm_high_frequency_limit(beta, t0, &row.high));
    check(rtherm_comparator_laws(beta, t0, &row.laws));
    rtherm_flux phi0{};
    check(rtherm_absorbed_flux(profile.get(), beta, t0, cfg.rel_tol, &phi0));
    row.phi0 = phi0.flux;
    rtherm_equilibrium eq{};
    check(rtherm_solve_equilibrium(profile.get(), beta, t0, cfg.rel_tol, &eq));
    row.t_bar = eq.t_bar;
    rtherm_flux phi{};
    check(rtherm_emitted_flux(profile.get(), eq.t_bar, cfg.rel_tol, &phi));
    row.phi_t_bar = phi.flux;
  } catch (const StatusError& e) {
    row.status = e.status();
    row.message = e.what();
  }
  return row;
}

}  // namespace

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto grid = sweep_grid(cfg);
  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      rows[i] = sweep_point(cfg, grid[i]);
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned n = std::min<std::size_t>(cfg.workers, grid.size());
    for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
    work();
  }

  int code = kExitOk;
  for (const auto& r : rows) {
    if (r.status != RTHERM_OK) {
      err << "rtherm-cli: " << cfg.axis << " = " << format_double(r.axis) << ": "
          << r.message << '\n';
      if (code == kExitOk) code = exit_code_for(r.status);
    }
  }

  const std::vector<std::string> header = {
      cfg.axis,        "t_bar",    "phi_t_bar",  "phi0",      "low_frequency_limit",
      "high_frequency_limit", "planck_einstein", "ott_kibble", "invariant", "status"};
  if (format_for(cfg) == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      const double values[] = {r.axis, r.t_bar, r.phi_t_bar, r.phi0, r.low, r.high,
                               r.laws.planck_einstein, r.laws.ott_kibble,
                               r.laws.invariant};
      Json j;
      for (std::size_t k = 0; k < 9; ++k) j[header[k]] = number(values[k]);
      j["status"] = rtherm_status_name(r.status);
      arr.push_back(std::move(j));
    }
    write_json(out, arr);
  } else {
    write_csv_row(out, header);
    for (const auto& r : rows) {
      auto field = [&](double v) { return std::isnan(v) ? std::string() : format_double(v); };
      write_csv_row(out, {format_double(r.axis), field(r.t_bar), field(r.phi_t_bar),
                          field(r.phi0), field(r.low), field(r.high),
                          field(r.laws.planck_einstein), field(r.laws.ott_kibble),
                          field(r.laws.invariant), rtherm_status_name(r.status)});
    }
  }
  return code;
}

int run_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Profile profile = make_profile(cfg.profile);
  const Eos eos = make_eos(cfg.eos);
  double e_init = 0.0;
  check(rtherm_eos_energy_of_temperature(eos.get(), cfg.t_init, &e_init));

  rtherm_trajectory* raw = nullptr;
  const rtherm_status status =
      rtherm_evolve(profile.get(), eos.get(), cfg.beta, cfg.t0, e_init, cfg.volume,
                    cfg.t_max, cfg.step_tol, &raw);
  const Trajectory traj(raw);
  if (!traj) check(status);
  std::string error;
  if (status != RTHERM_OK) {
    error = std::string(rtherm_status_name(status)) + ": " + rtherm_last_error();
    err << "rtherm-cli: " << error << '\n';
  }

  const std::size_t n = rtherm_trajectory_size(traj.get());
  std::vector<rtherm_sample> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    check(rtherm_trajectory_sample(traj.get(), i, &samples[i]));
  }
  const double t_bar = rtherm_trajectory_t_bar(traj.get());
  const double gap = rtherm_trajectory_terminal_gap(traj.get());

  if (format_for(cfg) == "json") {
    Json j;
    j["profile"] = cfg.profile;
    j["eos"] = cfg.eos;
    j["beta"] = cfg.beta;
    j["t0"] = cfg.t0;
    j["t_bar"] = number(t_bar);
    j["terminal_gap"] = number(gap);
    j["status"] = rtherm_status_name(status);
    if (!error.empty()) j["error"] = error;
    Json rows = Json::array();
    for (const auto& s : samples) {
      rows.push_back(Json{{"t", s.t}, {"E", s.energy}, {"T", s.temperature},
                          {"F", s.free_energy}});
    }
    j["samples"] = std::move(rows);
    write_json(out, j);
  } else {
    write_csv_row(out, {"t", "E", "T", "F"});
    for (const auto& s : samples) {
      write_csv_row(out, {format_double(s.t), format_double(s.energy),
                          format_double(s.temperature), format_double(s.free_energy)});
    }
    out << "# t_bar=" << format_double(t_bar) << '\n';
    out << "# terminal_gap=" << format_double(gap) << '\n';
    if (!error.empty()) out << "# error=" << error << '\n';
  }
  return exit_code_for(status);
}

namespace {

struct Comparison {
  rtherm_flux quadrature;
  rtherm_mc_estimate mc;
  double z;
};

// With a zero-variance estimate the score is 0 when the two agree to the
// quadrature tolerance and infinite otherwise.
double z_score(const rtherm_flux& q, const rtherm_mc_estimate& mc, double rel_tol) {
  const double diff = mc.mean - q.flux;
  if (mc.std_error > 0.0) return diff / mc.std_error;
  const double slack = 10.0 * rel_tol * std::abs(q.flux) + q.error_estimate;
  if (std::abs(diff) <= slack) return 0.0;
  return diff > 0 ? INFINITY : -INFINITY;
}

Json comparison_json(const Comparison& c) {
  Json j;
  j["quadrature"] = number(c.quadrature.flux);
  j["quadrature_error"] = number(c.quadrature.error_estimate);
  j["mc_mean"] = number(c.mc.mean);
  j["mc_std_error"] = number(c.mc.std_error);
  j["z_score"] = number(c.z);
  return j;
}

}  // namespace

int run_mc_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Profile profile = make_profile(cfg.profile);
  const double temperature = cfg.temperature > 0.0 ? cfg.temperature : cfg.t0;

  Comparison emitted{}, absorbed{};
  check(rtherm_emitted_flux(profile.get(), temperature, cfg.rel_tol, &emitted.quadrature));
  check(rtherm_mc_emitted_flux(profile.get(), temperature, cfg.samples, cfg.seed,
                               cfg.workers, &emitted.mc));
  emitted.z = z_score(emitted.quadrature, emitted.mc, cfg.rel_tol);
  check(rtherm_absorbed_flux(profile.get(), cfg.beta, cfg.t0, cfg.rel_tol,
                             &absorbed.quadrature));
  check(rtherm_mc_absorbed_flux(profile.get(), cfg.beta, cfg.t0, cfg.samples, cfg.seed,
                                cfg.workers, &absorbed.mc));
  absorbed.z = z_score(absorbed.quadrature, absorbed.mc, cfg.rel_tol);

  if (format_for(cfg) == "json") {
    Json j;
    j["profile"] = cfg.profile;
    j["beta"] = cfg.beta;
    j["t0"] = cfg.t0;
    j["temperature"] = temperature;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["emitted"] = comparison_json(emitted);
    j["absorbed"] = comparison_json(absorbed);
    write_json(out, j);
  } else {
    write_csv_row(out, {"flux", "quadrature", "quadrature_error", "mc_mean",
                        "mc_std_error", "z_score"});
    for (const auto& [name, c] : {std::pair{"emitted", emitted}, std::pair{"absorbed", absorbed}}) {
      write_csv_row(out, {name, format_double(c.quadrature.flux),
                          format_double(c.quadrature.error_estimate), format_double(c.mc.mean),
                          format_double(c.mc.std_error), format_double(c.z)});
    }
  }

  int code = kExitOk;
  for (const auto& [name, c] : {std::pair{"emitted", emitted}, std::pair{"absorbed", absorbed}}) {
    if (!(std::abs(c.z) <= 4.0)) {
      err << "rtherm-cli: " << name << " flux: |z| = " << format_double(std::abs(c.z))
          << " exceeds 4\n";
      code = kExitValidation;
    }
  }
  return code;
}

int run_entropy_probe(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Eos eos = make_eos(cfg.eos);
  std::vector<double> sup(cfg.magnitudes.size());
  check(rtherm_unboundedness_probe(eos.get(), cfg.volume, cfg.beta, cfg.t0,
                                   cfg.magnitudes.data(), cfg.magnitudes.size(),
                                   sup.data()));

  // Least-squares slope of sup against |P0|.
  double fitted = NAN;
  const std::size_t n = sup.size();
  if (n >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mx += cfg.magnitudes[i];
      my += sup[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sxy += (cfg.magnitudes[i] - mx) * (sup[i] - my);
      sxx += (cfg.magnitudes[i] - mx) * (cfg.magnitudes[i] - mx);
    }
    fitted = sxy / sxx;
  }
  const double analytic = cfg.beta / cfg.t0;

  if (format_for(cfg) == "json") {
    Json j;
    j["eos"] = cfg.eos;
    j["beta"] = cfg.beta;
    j["t0"] = cfg.t0;
    Json rows = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      rows.push_back(Json{{"p0_magnitude", cfg.magnitudes[i]}, {"sup_entropy", sup[i]}});
    }
    j["rows"] = std::move(rows);
    j["fitted_slope"] = number(fitted);
    j["analytic_slope"] = analytic;
    write_json(out, j);
  } else {
    write_csv_row(out, {"p0_magnitude", "sup_entropy"});
    for (std::size_t i = 0; i < n; ++i) {
      write_csv_row(out, {format_double(cfg.magnitudes[i]), format_double(sup[i])});
    }
    out << "# fitted_slope=" << format_double(fitted) << '\n';
    out << "# analytic_slope=" << format_double(analytic) << '\n';
  }
  return kExitOk;
}

int run_flux(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Profile profile = make_profile(cfg.profile);
  const double temperature = cfg.temperature > 0.0 ? cfg.temperature : cfg.t0;
  rtherm_flux phi{}, phi0{};
  check(rtherm_emitted_flux(profile.get(), temperature, cfg.rel_tol, &phi));
  check(rtherm_absorbed_flux(profile.get(), cfg.beta, cfg.t0, cfg.rel_tol, &phi0));

  if (format_for(cfg) == "json") {
    Json j;
    j["profile"] = cfg.profile;
    j["temperature"] = temperature;
    j["phi"] = number(phi.flux);
    j["phi_error"] = number(phi.error_estimate);
    j["beta"] = cfg.beta;
    j["t0"] = cfg.t0;
    j["phi0"] = number(phi0.flux);
    j["phi0_error"] = number(phi0.error_estimate);
    write_json(out, j);
  } else {
    write_csv_row(out, {"profile", "temperature", "phi", "phi_error", "beta", "t0", "phi0",
                        "phi0_error"});
    write_csv_row(out, {cfg.profile, format_double(temperature), format_double(phi.flux),
                        format_double(phi.error_estimate), format_double(cfg.beta),
                        format_double(cfg.t0), format_double(phi0.flux),
                        format_double(phi0.error_estimate)});
  }
  return kExitOk;
}

namespace {

std::filesystem::path output_path(const std::string& output) {
  std::filesystem::path path(output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("RTHERM_OUTPUT_DIR"); dir && *dir) {
      path = std::filesystem::path(dir) / path;
    }
  }
  return path;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "fixed-point") return run_fixed_point(cfg, out, err);
  if (cfg.command == "sweep") return run_sweep(cfg, out, err);
  if (cfg.command == "evolve") return run_evolve(cfg, out, err);
  if (cfg.command == "mc-validate") return run_mc_validate(cfg, out, err);
  if (cfg.command == "entropy-probe") return run_entropy_probe(cfg, out, err);
  if (cfg.command == "flux") return run_flux(cfg, out, err);
  throw UsageError("unknown command '" + cfg.command + "'");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.output.empty()) return dispatch(cfg, out, err);
  // Buffer so that a failed run leaves no partial file behind.
  std::ostringstream buffer;
  const int code = dispatch(cfg, buffer, err);
  const auto path = output_path(cfg.output);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  file << buffer.str();
  file.close();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = parse_config(argc, argv, out);
    if (cfg.command.empty()) return kExitOk;
    return run(cfg, out, err);
  } catch (const UsageError& e) {
    err << "rtherm-cli: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputDomainError& e) {
    err << "rtherm-cli: domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const IoError& e) {
    err << "rtherm-cli: i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const StatusError& e) {
    err << "rtherm-cli: " << e.what() << '\n';
    return exit_code_for(e.status());
  } catch (const std::exception& e) {
    err << "rtherm-cli: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace rtherm::cli
