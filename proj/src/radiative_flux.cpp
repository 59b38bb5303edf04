#include "rtherm/radiative_flux.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rtherm/errors.hpp"

namespace rtherm {

namespace {

void require_angle(double theta0) {
  if (!(theta0 >= 0.0 && theta0 <= kPi)) {
    throw DomainError("polar angle " + std::to_string(theta0) +
                      " outside [0, pi]");
  }
}

void require_temperature(double t, const char* name) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(t));
  }
}

// w^3 n(w / T) without argument checks; w = 0 contributes nothing.
double planck_energy_density(double omega, double temperature) {
  if (omega <= 0.0) return 0.0;
  const double x = omega / temperature;
  if (x > kOccupationCutoff) return 0.0;
  return omega * omega * omega / std::expm1(x);
}

// Angular kernel of the absorbed flux at fixed lab-frame frequency.
struct AbsorbedKernel {
  double beta;
  double gamma_t0;

  double operator()(double omega, double theta0) const {
    const double s = std::sin(theta0);
    const double d = 1.0 + beta * std::cos(theta0);
    const double x = omega / (gamma_t0 * d);
    if (x > kOccupationCutoff) return 0.0;
    return s * s / (d * d * d * std::expm1(x));
  }
};

double inner_tolerance(double rel_tol) {
  return std::max(rel_tol * 0.1, kMinRelTol);
}

}  // namespace

double doppler_frequency(const Boost& boost, double theta0, double omega0) {
  require_angle(theta0);
  if (!(omega0 >= 0.0)) {
    throw DomainError("rest-frame frequency must be non-negative");
  }
  return boost.gamma() * (1.0 + boost.beta() * std::cos(theta0)) * omega0;
}

double planck_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) {
    throw DomainError("occupation requires positive frequency, got " +
                      std::to_string(omega));
  }
  require_temperature(temperature, "temperature");
  const double x = omega / temperature;
  if (x > kOccupationCutoff) return 0.0;
  return 1.0 / std::expm1(x);
}

double emitted_integrand(const AbsorptionProfile& profile, double temperature,
                         double omega) {
  require_temperature(temperature, "temperature");
  const double a = profile(omega);
  if (a == 0.0 || omega == 0.0) return 0.0;
  return kPi * a * planck_energy_density(omega, temperature);
}

FluxResult emitted_flux(const AbsorptionProfile& profile, double temperature,
                        double rel_tol) {
  require_temperature(temperature, "temperature");
  auto density = [temperature](double w) {
    return planck_energy_density(w, temperature);
  };
  FluxResult out;
  for (const auto& seg : profile.segments()) {
    const QuadratureResult q =
        std::isinf(seg.hi)
            ? integrate_semi_infinite(density, rel_tol, temperature)
            : integrate_finite(density, seg.lo, seg.hi, rel_tol);
    out.flux += seg.value * q.value;
    out.error_estimate += seg.value * q.error_estimate;
  }
  out.flux *= kPi;
  out.error_estimate *= kPi;
  return out;
}

double absorbed_integrand(const AbsorptionProfile& profile, const Boost& boost,
                          double t0, double omega, double theta0) {
  require_temperature(t0, "bath temperature");
  require_angle(theta0);
  const double a = profile(omega);
  if (a == 0.0 || omega == 0.0) return 0.0;
  const double g = boost.gamma();
  const AbsorbedKernel kernel{boost.beta(), g * t0};
  return 2.0 * a * omega * omega * omega * kernel(omega, theta0) / (g * g * g);
}

FluxResult absorbed_flux(const AbsorptionProfile& profile, const Boost& boost,
                         double t0, double rel_tol) {
  require_temperature(t0, "bath temperature");
  detail::check_tolerance(rel_tol);
  const double g = boost.gamma();
  const AbsorbedKernel kernel{boost.beta(), g * t0};
  const double inner_tol = inner_tolerance(rel_tol);

  // Worst relative error reported by any inner pass; bounds their combined
  // contribution to the outer result.
  double inner_rel_error = 0.0;
  auto spectral = [&](double omega) {
    if (omega <= 0.0) return 0.0;
    const QuadratureResult inner = integrate_finite(
        [&](double th) { return kernel(omega, th); }, 0.0, kPi, inner_tol);
    if (inner.value != 0.0) {
      inner_rel_error =
          std::max(inner_rel_error, inner.error_estimate / std::abs(inner.value));
    }
    return omega * omega * omega * inner.value;
  };

  FluxResult out;
  for (const auto& seg : profile.segments()) {
    const QuadratureResult q =
        std::isinf(seg.hi) ? integrate_semi_infinite(spectral, rel_tol, g * t0)
                           : integrate_finite(spectral, seg.lo, seg.hi, rel_tol);
    out.flux += seg.value * q.value;
    out.error_estimate +=
        seg.value * (q.error_estimate + inner_rel_error * std::abs(q.value));
  }
  const double prefactor = 2.0 / (g * g * g);
  out.flux *= prefactor;
  out.error_estimate *= prefactor;
  return out;
}

}  // namespace rtherm
