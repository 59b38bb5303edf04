#include "rtherm/rtherm.h"

#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "rtherm/composite_entropy.hpp"
#include "rtherm/core.hpp"
#include "rtherm/dynamics.hpp"
#include "rtherm/equilibrium.hpp"
#include "rtherm/errors.hpp"
#include "rtherm/montecarlo.hpp"
#include "rtherm/radiative_flux.hpp"

struct rtherm_profile {
  rtherm::AbsorptionProfile value;
};

struct rtherm_eos {
  rtherm::EquationOfState value;
};

struct rtherm_trajectory {
  rtherm::Trajectory value;
};

namespace {

thread_local std::string g_last_error;

rtherm_status fail(rtherm_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs body and translates any exception into a status code.
template <class Body>
rtherm_status guarded(Body&& body) noexcept {
  try {
    body();
    return RTHERM_OK;
  } catch (const rtherm::DomainError& e) {
    return fail(RTHERM_ERR_DOMAIN, e.what());
  } catch (const rtherm::AccuracyError& e) {
    return fail(RTHERM_ERR_ACCURACY, e.what());
  } catch (const rtherm::DegenerateProfileError& e) {
    return fail(RTHERM_ERR_DEGENERATE_PROFILE, e.what());
  } catch (const rtherm::SolverError& e) {
    return fail(RTHERM_ERR_SOLVER, e.what());
  } catch (const rtherm::StiffnessError& e) {
    return fail(RTHERM_ERR_STIFFNESS, e.what());
  } catch (const rtherm::OverflowGuardError& e) {
    return fail(RTHERM_ERR_OVERFLOW, e.what());
  } catch (const rtherm::DegenerateProbeError& e) {
    return fail(RTHERM_ERR_DEGENERATE_PROBE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RTHERM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RTHERM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RTHERM_ERR_INTERNAL, "unknown error");
  }
}

template <class... Ptrs>
bool any_null(const Ptrs*... ptrs) {
  return ((ptrs == nullptr) || ...);
}

rtherm_status null_argument() {
  return fail(RTHERM_ERR_NULL_ARGUMENT, "null pointer argument");
}

}  // namespace

extern "C" {

const char* rtherm_last_error(void) { return g_last_error.c_str(); }

const char* rtherm_status_name(rtherm_status status) {
  switch (status) {
    case RTHERM_OK: return "ok";
    case RTHERM_ERR_DOMAIN: return "domain error";
    case RTHERM_ERR_ACCURACY: return "accuracy error";
    case RTHERM_ERR_DEGENERATE_PROFILE: return "degenerate profile";
    case RTHERM_ERR_SOLVER: return "solver error";
    case RTHERM_ERR_STIFFNESS: return "stiffness error";
    case RTHERM_ERR_OVERFLOW: return "overflow guard";
    case RTHERM_ERR_DEGENERATE_PROBE: return "degenerate probe";
    case RTHERM_ERR_NULL_ARGUMENT: return "null argument";
    case RTHERM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rtherm_version(void) { return "0.1.0"; }

rtherm_status rtherm_boost_gamma(double beta, double* gamma) {
  if (any_null(gamma)) return null_argument();
  return guarded([&] { *gamma = rtherm::make_boost(beta).gamma(); });
}

rtherm_status rtherm_profile_gray(double a, rtherm_profile** out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    *out = new rtherm_profile{rtherm::AbsorptionProfile::gray(a)};
  });
}

rtherm_status rtherm_profile_band(double center, double width,
                                  rtherm_profile** out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    *out = new rtherm_profile{
        rtherm::AbsorptionProfile::narrowband(center, width)};
  });
}

rtherm_status rtherm_profile_piecewise(const double* omega, const double* value,
                                       size_t count, rtherm_profile** out) {
  if (any_null(omega, value, out)) return null_argument();
  return guarded([&] {
    std::vector<rtherm::Breakpoint> points(count);
    for (size_t i = 0; i < count; ++i) points[i] = {omega[i], value[i]};
    *out = new rtherm_profile{
        rtherm::AbsorptionProfile::piecewise(std::move(points))};
  });
}

rtherm_status rtherm_profile_scaled(const rtherm_profile* profile, double c,
                                    rtherm_profile** out) {
  if (any_null(profile, out)) return null_argument();
  return guarded([&] { *out = new rtherm_profile{profile->value.scaled(c)}; });
}

void rtherm_profile_free(rtherm_profile* profile) { delete profile; }

rtherm_status rtherm_absorption_value(const rtherm_profile* profile,
                                      double omega, double* out) {
  if (any_null(profile, out)) return null_argument();
  return guarded(
      [&] { *out = rtherm::absorption_value(profile->value, omega); });
}

rtherm_status rtherm_eos_constant_cv(double cv, double e_ref, double s_ref,
                                     rtherm_eos** out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    *out = new rtherm_eos{rtherm::EquationOfState::constant_cv(cv, e_ref, s_ref)};
  });
}

rtherm_status rtherm_eos_power_law(double a, double alpha, rtherm_eos** out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    *out = new rtherm_eos{rtherm::EquationOfState::power_law(a, alpha)};
  });
}

void rtherm_eos_free(rtherm_eos* eos) { delete eos; }

rtherm_status rtherm_eos_temperature(const rtherm_eos* eos, double energy,
                                     double* out) {
  if (any_null(eos, out)) return null_argument();
  return guarded([&] { *out = rtherm::eos_temperature(eos->value, energy); });
}

rtherm_status rtherm_eos_entropy(const rtherm_eos* eos, double energy,
                                 double volume, double* out) {
  if (any_null(eos, out)) return null_argument();
  return guarded(
      [&] { *out = rtherm::eos_entropy(eos->value, energy, volume); });
}

rtherm_status rtherm_eos_energy_of_temperature(const rtherm_eos* eos,
                                               double temperature, double* out) {
  if (any_null(eos, out)) return null_argument();
  return guarded([&] {
    *out = rtherm::eos_energy_of_temperature(eos->value, temperature);
  });
}

rtherm_status rtherm_emitted_flux(const rtherm_profile* profile,
                                  double temperature, double rel_tol,
                                  rtherm_flux* out) {
  if (any_null(profile, out)) return null_argument();
  return guarded([&] {
    const auto r = rtherm::emitted_flux(profile->value, temperature, rel_tol);
    *out = rtherm_flux{r.flux, r.error_estimate};
  });
}

rtherm_status rtherm_absorbed_flux(const rtherm_profile* profile, double beta,
                                   double t0, double rel_tol, rtherm_flux* out) {
  if (any_null(profile, out)) return null_argument();
  return guarded([&] {
    const auto r = rtherm::absorbed_flux(profile->value,
                                         rtherm::make_boost(beta), t0, rel_tol);
    *out = rtherm_flux{r.flux, r.error_estimate};
  });
}

rtherm_status rtherm_solve_equilibrium(const rtherm_profile* profile,
                                       double beta, double t0, double rel_tol,
                                       rtherm_equilibrium* out) {
  if (any_null(profile, out)) return null_argument();
  return guarded([&] {
    const auto r = rtherm::solve_equilibrium_temperature(
        profile->value, rtherm::make_boost(beta), t0, rel_tol);
    *out = rtherm_equilibrium{r.t_bar, r.residual, r.iterations};
  });
}

rtherm_status rtherm_narrowband_equilibrium(double f, double beta, double t0,
                                            double rel_tol, double* t_bar) {
  if (any_null(t_bar)) return null_argument();
  return guarded([&] {
    *t_bar = rtherm::narrowband_equilibrium(f, rtherm::make_boost(beta), t0,
                                            rel_tol);
  });
}

rtherm_status rtherm_low_frequency_limit(double beta, double t0, double* out) {
  if (any_null(out)) return null_argument();
  return guarded(
      [&] { *out = rtherm::low_frequency_limit(rtherm::make_boost(beta), t0); });
}

rtherm_status rtherm_high_frequency_limit(double beta, double t0, double* out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    *out = rtherm::high_frequency_limit(rtherm::make_boost(beta), t0);
  });
}

rtherm_status rtherm_comparator_laws(double beta, double t0,
                                     rtherm_comparators* out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    const auto c = rtherm::comparator_laws(rtherm::make_boost(beta), t0);
    *out = rtherm_comparators{c.planck_einstein, c.ott_kibble, c.invariant};
  });
}

rtherm_status rtherm_evolve(const rtherm_profile* profile,
                            const rtherm_eos* eos, double beta, double t0,
                            double initial_energy, double volume, double t_max,
                            double step_tol, rtherm_trajectory** out) {
  if (any_null(profile, eos, out)) return null_argument();
  std::optional<rtherm::Trajectory> partial;
  const rtherm_status status = guarded([&] {
    try {
      *out = new rtherm_trajectory{rtherm::evolve(
          profile->value, rtherm::make_boost(beta), t0, eos->value,
          initial_energy, volume, t_max, step_tol)};
    } catch (const rtherm::StiffnessError& e) {
      partial = e.partial();
      throw;
    }
  });
  if (partial) {
    // The partial trajectory survives a stiffness failure.
    try {
      *out = new rtherm_trajectory{std::move(*partial)};
    } catch (...) {
      return fail(RTHERM_ERR_INTERNAL, "out of memory");
    }
  }
  return status;
}

void rtherm_trajectory_free(rtherm_trajectory* trajectory) { delete trajectory; }

size_t rtherm_trajectory_size(const rtherm_trajectory* trajectory) {
  return trajectory ? trajectory->value.samples.size() : 0;
}

rtherm_status rtherm_trajectory_sample(const rtherm_trajectory* trajectory,
                                       size_t index, rtherm_sample* out) {
  if (any_null(trajectory, out)) return null_argument();
  if (index >= trajectory->value.samples.size()) {
    return fail(RTHERM_ERR_DOMAIN, "trajectory sample index out of range");
  }
  const auto& s = trajectory->value.samples[index];
  *out = rtherm_sample{s.t, s.energy, s.temperature, s.free_energy};
  return RTHERM_OK;
}

double rtherm_trajectory_t_bar(const rtherm_trajectory* trajectory) {
  return trajectory ? trajectory->value.t_bar
                    : std::numeric_limits<double>::quiet_NaN();
}

double rtherm_trajectory_terminal_gap(const rtherm_trajectory* trajectory) {
  return trajectory ? trajectory->value.terminal_gap()
                    : std::numeric_limits<double>::quiet_NaN();
}

rtherm_status rtherm_energy_rate(const rtherm_profile* profile, double beta,
                                 double t0, double temperature, double* out) {
  if (any_null(profile, out)) return null_argument();
  return guarded([&] {
    *out = rtherm::energy_rate(profile->value, rtherm::make_boost(beta), t0,
                               temperature);
  });
}

rtherm_status rtherm_lyapunov_value(const rtherm_eos* eos, double energy,
                                    double volume, double t_bar, double* out) {
  if (any_null(eos, out)) return null_argument();
  return guarded([&] {
    *out = rtherm::lyapunov_value(eos->value, energy, volume, t_bar);
  });
}

rtherm_status rtherm_lyapunov_rate(const rtherm_profile* profile,
                                   const rtherm_eos* eos, double energy,
                                   double t_bar, double* out) {
  if (any_null(profile, eos, out)) return null_argument();
  return guarded([&] {
    *out = rtherm::lyapunov_rate(profile->value, eos->value, energy, t_bar);
  });
}

rtherm_status rtherm_mc_emitted_flux(const rtherm_profile* profile,
                                     double temperature, uint64_t n_samples,
                                     uint64_t seed, unsigned workers,
                                     rtherm_mc_estimate* out) {
  if (any_null(profile, out)) return null_argument();
  return guarded([&] {
    const auto r = rtherm::mc_emitted_flux(profile->value, temperature,
                                           n_samples, seed, workers);
    *out = rtherm_mc_estimate{r.mean, r.std_error, r.n_samples, r.seed};
  });
}

rtherm_status rtherm_mc_absorbed_flux(const rtherm_profile* profile,
                                      double beta, double t0,
                                      uint64_t n_samples, uint64_t seed,
                                      unsigned workers,
                                      rtherm_mc_estimate* out) {
  if (any_null(profile, out)) return null_argument();
  return guarded([&] {
    const auto r =
        rtherm::mc_absorbed_flux(profile->value, rtherm::make_boost(beta), t0,
                                 n_samples, seed, workers);
    *out = rtherm_mc_estimate{r.mean, r.std_error, r.n_samples, r.seed};
  });
}

rtherm_status rtherm_tilde_temperature(double beta, double t0, double* out) {
  if (any_null(out)) return null_argument();
  return guarded(
      [&] { *out = rtherm::tilde_temperature(rtherm::make_boost(beta), t0); });
}

rtherm_status rtherm_tilde_entropy(const rtherm_eos* eos, double energy,
                                   double volume, double beta, double t0,
                                   double* out) {
  if (any_null(eos, out)) return null_argument();
  return guarded([&] {
    *out = rtherm::tilde_entropy(eos->value, energy, volume,
                                 rtherm::make_boost(beta), t0);
  });
}

rtherm_status rtherm_maximize_tilde_entropy(const rtherm_eos* eos,
                                            double volume, double beta,
                                            double t0, double* e_star,
                                            double* s_tilde_max) {
  if (any_null(eos, e_star, s_tilde_max)) return null_argument();
  return guarded([&] {
    const auto m = rtherm::maximize_tilde_entropy(eos->value, volume,
                                                  rtherm::make_boost(beta), t0);
    *e_star = m.e_star;
    *s_tilde_max = m.s_tilde_max;
  });
}

rtherm_status rtherm_composite_entropy(const rtherm_eos* eos, double energy,
                                       double volume, double p0_parallel,
                                       double e0, double beta, double t0,
                                       double* out) {
  if (any_null(eos, out)) return null_argument();
  return guarded([&] {
    *out = rtherm::composite_entropy_value(
        eos->value, rtherm::CompositeState{energy, volume, p0_parallel, e0},
        rtherm::make_boost(beta), t0);
  });
}

rtherm_status rtherm_unboundedness_probe(const rtherm_eos* eos, double volume,
                                         double beta, double t0,
                                         const double* magnitudes, size_t count,
                                         double* sup_out) {
  if (any_null(eos, magnitudes, sup_out)) return null_argument();
  return guarded([&] {
    const auto rows = rtherm::unboundedness_probe(
        eos->value, volume, rtherm::make_boost(beta), t0,
        std::vector<double>(magnitudes, magnitudes + count));
    for (size_t i = 0; i < rows.size(); ++i) sup_out[i] = rows[i].sup_entropy;
  });
}

rtherm_status rtherm_energy_conservation_residual(double delta_e,
                                                  double delta_e0,
                                                  double delta_p0_parallel,
                                                  double beta, double* out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    *out = rtherm::energy_conservation_residual(
        delta_e, delta_e0, delta_p0_parallel, rtherm::make_boost(beta));
  });
}

}  // extern "C"
