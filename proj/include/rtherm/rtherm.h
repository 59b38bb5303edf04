/*
 * rtherm: temperature registered by a clamped thermometer exchanging
 * radiation with a uniformly moving black-body bath.
 *
 * Plain C interface to the shared library. Objects are opaque handles owned
 * by the caller and released with the matching *_free function. Every
 * fallible call returns an rtherm_status; on failure the outputs are left
 * untouched and rtherm_last_error() describes the problem. The message is
 * thread-local and stays valid until the next failing call on that thread.
 *
 * Units: hbar = k = c = 1, coupling constant x hole area = 1.
 */
#ifndef RTHERM_H
#define RTHERM_H

#include <stddef.h>
#include <stdint.h>

#if defined(RTHERM_BUILDING_LIBRARY)
#define RTHERM_API __attribute__((visibility("default")))
#else
#define RTHERM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rtherm_status {
  RTHERM_OK = 0,
  RTHERM_ERR_DOMAIN = 1,           /* argument outside its domain */
  RTHERM_ERR_ACCURACY = 2,         /* quadrature budget exhausted */
  RTHERM_ERR_DEGENERATE_PROFILE = 3,
  RTHERM_ERR_SOLVER = 4,           /* bracketing or iteration failed */
  RTHERM_ERR_STIFFNESS = 5,        /* ODE step size underflow */
  RTHERM_ERR_OVERFLOW = 6,         /* result not representable */
  RTHERM_ERR_DEGENERATE_PROBE = 7, /* entropy probe at beta = 0 */
  RTHERM_ERR_NULL_ARGUMENT = 8,
  RTHERM_ERR_INTERNAL = 9
} rtherm_status;

typedef struct rtherm_profile rtherm_profile;
typedef struct rtherm_eos rtherm_eos;
typedef struct rtherm_trajectory rtherm_trajectory;

RTHERM_API const char* rtherm_last_error(void);
RTHERM_API const char* rtherm_status_name(rtherm_status status);
RTHERM_API const char* rtherm_version(void);

/* Kinematics. 0 <= beta <= 1 - 1e-6. */
RTHERM_API rtherm_status rtherm_boost_gamma(double beta, double* gamma);

/* Absorption profiles. */
RTHERM_API rtherm_status rtherm_profile_gray(double a, rtherm_profile** out);
RTHERM_API rtherm_status rtherm_profile_band(double center, double width,
                                             rtherm_profile** out);
/* Breakpoints (omega[i], value[i]); the last value must be 0. */
RTHERM_API rtherm_status rtherm_profile_piecewise(const double* omega,
                                                  const double* value,
                                                  size_t count,
                                                  rtherm_profile** out);
/* c * A for c in (0, 1]. */
RTHERM_API rtherm_status rtherm_profile_scaled(const rtherm_profile* profile,
                                               double c, rtherm_profile** out);
RTHERM_API void rtherm_profile_free(rtherm_profile* profile);
RTHERM_API rtherm_status rtherm_absorption_value(const rtherm_profile* profile,
                                                 double omega, double* out);

/* Equations of state for the thermometer body. */
RTHERM_API rtherm_status rtherm_eos_constant_cv(double cv, double e_ref,
                                                double s_ref, rtherm_eos** out);
RTHERM_API rtherm_status rtherm_eos_power_law(double a, double alpha,
                                              rtherm_eos** out);
RTHERM_API void rtherm_eos_free(rtherm_eos* eos);
RTHERM_API rtherm_status rtherm_eos_temperature(const rtherm_eos* eos,
                                                double energy, double* out);
RTHERM_API rtherm_status rtherm_eos_entropy(const rtherm_eos* eos,
                                            double energy, double volume,
                                            double* out);
RTHERM_API rtherm_status rtherm_eos_energy_of_temperature(const rtherm_eos* eos,
                                                          double temperature,
                                                          double* out);

/* Fluxes. */
typedef struct rtherm_flux {
  double flux;
  double error_estimate;
} rtherm_flux;

RTHERM_API rtherm_status rtherm_emitted_flux(const rtherm_profile* profile,
                                             double temperature, double rel_tol,
                                             rtherm_flux* out);
RTHERM_API rtherm_status rtherm_absorbed_flux(const rtherm_profile* profile,
                                              double beta, double t0,
                                              double rel_tol, rtherm_flux* out);

/* Fixed point and limits. */
typedef struct rtherm_equilibrium {
  double t_bar;
  double residual;
  int iterations;
} rtherm_equilibrium;

typedef struct rtherm_comparators {
  double planck_einstein;
  double ott_kibble;
  double invariant;
} rtherm_comparators;

RTHERM_API rtherm_status rtherm_solve_equilibrium(const rtherm_profile* profile,
                                                  double beta, double t0,
                                                  double rel_tol,
                                                  rtherm_equilibrium* out);
RTHERM_API rtherm_status rtherm_narrowband_equilibrium(double f, double beta,
                                                       double t0, double rel_tol,
                                                       double* t_bar);
RTHERM_API rtherm_status rtherm_low_frequency_limit(double beta, double t0,
                                                    double* out);
RTHERM_API rtherm_status rtherm_high_frequency_limit(double beta, double t0,
                                                     double* out);
RTHERM_API rtherm_status rtherm_comparator_laws(double beta, double t0,
                                                rtherm_comparators* out);

/* Relaxation dynamics. */
typedef struct rtherm_sample {
  double t;
  double energy;
  double temperature;
  double free_energy;
} rtherm_sample;

/* On RTHERM_ERR_STIFFNESS *out still receives the partial trajectory. */
RTHERM_API rtherm_status rtherm_evolve(const rtherm_profile* profile,
                                       const rtherm_eos* eos, double beta,
                                       double t0, double initial_energy,
                                       double volume, double t_max,
                                       double step_tol,
                                       rtherm_trajectory** out);
RTHERM_API void rtherm_trajectory_free(rtherm_trajectory* trajectory);
RTHERM_API size_t rtherm_trajectory_size(const rtherm_trajectory* trajectory);
RTHERM_API rtherm_status rtherm_trajectory_sample(
    const rtherm_trajectory* trajectory, size_t index, rtherm_sample* out);
RTHERM_API double rtherm_trajectory_t_bar(const rtherm_trajectory* trajectory);
RTHERM_API double rtherm_trajectory_terminal_gap(
    const rtherm_trajectory* trajectory);

RTHERM_API rtherm_status rtherm_energy_rate(const rtherm_profile* profile,
                                            double beta, double t0,
                                            double temperature, double* out);
RTHERM_API rtherm_status rtherm_lyapunov_value(const rtherm_eos* eos,
                                               double energy, double volume,
                                               double t_bar, double* out);
RTHERM_API rtherm_status rtherm_lyapunov_rate(const rtherm_profile* profile,
                                              const rtherm_eos* eos,
                                              double energy, double t_bar,
                                              double* out);

/* Monte Carlo oracle. */
typedef struct rtherm_mc_estimate {
  double mean;
  double std_error;
  uint64_t n_samples;
  uint64_t seed;
} rtherm_mc_estimate;

RTHERM_API rtherm_status rtherm_mc_emitted_flux(const rtherm_profile* profile,
                                                double temperature,
                                                uint64_t n_samples,
                                                uint64_t seed, unsigned workers,
                                                rtherm_mc_estimate* out);
RTHERM_API rtherm_status rtherm_mc_absorbed_flux(const rtherm_profile* profile,
                                                 double beta, double t0,
                                                 uint64_t n_samples,
                                                 uint64_t seed, unsigned workers,
                                                 rtherm_mc_estimate* out);

/* Composite entropy. */
RTHERM_API rtherm_status rtherm_tilde_temperature(double beta, double t0,
                                                  double* out);
RTHERM_API rtherm_status rtherm_tilde_entropy(const rtherm_eos* eos,
                                              double energy, double volume,
                                              double beta, double t0,
                                              double* out);
RTHERM_API rtherm_status rtherm_maximize_tilde_entropy(const rtherm_eos* eos,
                                                       double volume,
                                                       double beta, double t0,
                                                       double* e_star,
                                                       double* s_tilde_max);
RTHERM_API rtherm_status rtherm_composite_entropy(const rtherm_eos* eos,
                                                  double energy, double volume,
                                                  double p0_parallel, double e0,
                                                  double beta, double t0,
                                                  double* out);
/* sup_out must hold count values. */
RTHERM_API rtherm_status rtherm_unboundedness_probe(const rtherm_eos* eos,
                                                    double volume, double beta,
                                                    double t0,
                                                    const double* magnitudes,
                                                    size_t count,
                                                    double* sup_out);
RTHERM_API rtherm_status rtherm_energy_conservation_residual(
    double delta_e, double delta_e0, double delta_p0_parallel, double beta,
    double* out);

#ifdef __cplusplus
}
#endif

#endif /* RTHERM_H */
