#pragma once

// Radiative exchange through the hole between the clamped thermometer and
// the moving black-body bath.
//
//   emitted flux   Phi(T)   = pi Int_0^inf A(w) w^3 n(w/T) dw
//   absorbed flux  Phi0(T0) = 2 gamma^-3 Int_0^inf dw Int_0^pi dth
//                             A(w) w^3 sin^2(th) (1 + beta cos th)^-3
//                             n(w / (gamma T0 (1 + beta cos th)))
//
// with n(x) = 1 / (e^x - 1). The azimuthal integral over the half-space
// (value 2) and, for Phi, the polar one (value pi/2) are folded into the
// constants. The occupation in Phi0 is taken at the bath rest temperature
// T0; the Doppler-shifted frequency seen by the thermometer is
// w = gamma (1 + beta cos th) w0.

#include "rtherm/core.hpp"
#include "rtherm/quadrature.hpp"

namespace rtherm {

struct FluxResult {
  double flux = 0.0;
  double error_estimate = 0.0;
};

// Exponent beyond which the Planck occupation is returned as exactly 0.
inline constexpr double kOccupationCutoff = 700.0;

double doppler_frequency(const Boost& boost, double theta0, double omega0);

// 1 / (exp(omega / T) - 1); 0 once omega / T exceeds kOccupationCutoff.
double planck_occupation(double omega, double temperature);

double emitted_integrand(const AbsorptionProfile& profile, double temperature,
                         double omega);

FluxResult emitted_flux(const AbsorptionProfile& profile, double temperature,
                        double rel_tol = kDefaultRelTol);

double absorbed_integrand(const AbsorptionProfile& profile, const Boost& boost,
                          double t0, double omega, double theta0);

// Nested adaptive quadrature: outer pass over frequency segment by segment,
// inner pass over the polar angle in the bath rest frame.
FluxResult absorbed_flux(const AbsorptionProfile& profile, const Boost& boost,
                         double t0, double rel_tol = kDefaultRelTol);

}  // namespace rtherm
