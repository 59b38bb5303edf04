#include "rtherm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rtherm/equilibrium.hpp"
#include "rtherm/radiative_flux.hpp"

namespace rtherm {

namespace {

// Dormand-Prince 5(4) tableau; the system is autonomous so the nodes are
// not needed.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// Fifth- minus fourth-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                 e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(x));
  }
}

}  // namespace

double Trajectory::terminal_gap() const {
  if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::abs(samples.back().temperature - t_bar) / t_bar;
}

double energy_rate(const AbsorptionProfile& profile, const Boost& boost,
                   double t0, double temperature, double rel_tol) {
  require_positive(temperature, "temperature");
  return absorbed_flux(profile, boost, t0, rel_tol).flux -
         emitted_flux(profile, temperature, rel_tol).flux;
}

double lyapunov_value(const EquationOfState& eos, double energy, double volume,
                      double t_bar) {
  require_positive(t_bar, "fixed-point temperature");
  return energy - t_bar * eos.entropy(energy, volume);
}

double lyapunov_rate(const AbsorptionProfile& profile,
                     const EquationOfState& eos, double energy, double t_bar,
                     double rel_tol) {
  require_positive(t_bar, "fixed-point temperature");
  const double t = eos.temperature(energy);
  if (t == t_bar) return 0.0;
  const double dphi = emitted_flux(profile, t_bar, rel_tol).flux -
                      emitted_flux(profile, t, rel_tol).flux;
  // Quadrature noise can flip the sign of dphi when T is within ~1e-14 of
  // T_bar.
  return std::min(0.0, (1.0 - t_bar / t) * dphi);
}

Trajectory evolve(const AbsorptionProfile& profile, const Boost& boost,
                  double t0, const EquationOfState& eos, double initial_energy,
                  double volume, double t_max, double step_tol) {
  require_positive(initial_energy, "initial energy");
  require_positive(t_max, "integration horizon");
  detail::check_tolerance(step_tol);

  const double t_bar =
      solve_equilibrium_temperature(profile, boost, t0, kDynamicsFluxTol).t_bar;
  const double phi0 = absorbed_flux(profile, boost, t0, kDynamicsFluxTol).flux;

  Trajectory traj{{}, profile, boost, t0, eos, volume, t_bar};
  auto record = [&](double t, double e) {
    const double temp = eos.temperature(e);
    traj.samples.push_back({t, e, temp, lyapunov_value(eos, e, volume, t_bar)});
    return std::abs(temp - t_bar) / t_bar < kConvergenceGap;
  };
  // NaN signals a stage that left E > 0; the step is then rejected.
  auto rate = [&](double e) {
    if (!(e > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return phi0 - emitted_flux(profile, eos.temperature(e), kDynamicsFluxTol).flux;
  };

  double t = 0.0;
  double e = initial_energy;
  if (record(t, e)) return traj;

  double k1 = rate(e);
  double h = std::min(t_max, 0.01 * e / std::max(std::abs(k1), 1e-300));
  while (t < t_max) {
    h = std::min(h, t_max - t);
    if (h < 1e-14 * std::max(1.0, t)) {
      throw StiffnessError("step size underflow at t = " + std::to_string(t),
                           std::move(traj));
    }
    const double k2 = rate(e + h * a21 * k1);
    const double k3 = rate(e + h * (a31 * k1 + a32 * k2));
    const double k4 = rate(e + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = rate(e + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 =
        rate(e + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double e_new =
        e + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = rate(e_new);
    const double err_abs =
        std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
    const double err =
        err_abs / (step_tol * std::max(std::abs(e), std::abs(e_new)));

    if (!std::isfinite(err)) {
      h *= 0.2;
      continue;
    }
    if (err <= 1.0) {
      t += h;
      e = e_new;
      k1 = k7;
      if (record(t, e)) break;
    }
    const double factor =
        err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= err <= 1.0 ? factor : std::min(factor, 1.0);
  }
  return traj;
}

}  // namespace rtherm
