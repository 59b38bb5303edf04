#include "rtherm/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rtherm/errors.hpp"
#include "rtherm/radiative_flux.hpp"

namespace rtherm {

namespace {

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(x));
  }
}

double flux_tolerance(double rel_tol) {
  return std::clamp(rel_tol * 0.01, kMinRelTol, kMaxRelTol);
}

}  // namespace

EquilibriumResult solve_equilibrium_temperature(
    const AbsorptionProfile& profile, const Boost& boost, double t0,
    double rel_tol) {
  require_positive(t0, "bath temperature");
  detail::check_tolerance(rel_tol);
  if (profile.is_zero()) {
    throw DegenerateProfileError(
        "absorption profile vanishes identically; no flux balance exists");
  }
  const double quad_tol = flux_tolerance(rel_tol);
  const double phi0 = absorbed_flux(profile, boost, t0, quad_tol).flux;
  if (!(phi0 > 0.0)) {
    throw SolverError(
        "absorbed flux underflows to zero; bath too cold for this profile");
  }
  const double log_phi0 = std::log(phi0);

  EquilibriumResult result;
  // Signed mismatch in log space; -inf while the emitted flux underflows.
  struct Probe {
    double x;
    double h;
    double residual;
  };
  auto probe = [&](double x) {
    ++result.iterations;
    const double phi = emitted_flux(profile, std::exp(x), quad_tol).flux;
    const double h = phi > 0.0 ? std::log(phi) - log_phi0
                               : -std::numeric_limits<double>::infinity();
    return Probe{x, h, phi - phi0};
  };
  auto done = [&](const Probe& p) {
    return std::abs(p.residual) <= rel_tol * phi0;
  };
  auto finish = [&](const Probe& p) {
    result.t_bar = std::exp(p.x);
    result.residual = p.residual;
    return result;
  };

  Probe start = probe(std::log(t0));
  if (done(start)) return finish(start);

  Probe lo = start;
  Probe hi = start;
  const double step = std::log(2.0);
  if (start.h < 0.0) {
    int k = 0;
    while (hi.h < 0.0) {
      if (++k > kMaxBracketExpansions) {
        throw SolverError("no bracket found within 2^60 above T0");
      }
      lo = hi;
      hi = probe(hi.x + step);
      if (done(hi)) return finish(hi);
    }
  } else {
    int k = 0;
    while (lo.h > 0.0) {
      if (++k > kMaxBracketExpansions) {
        throw SolverError("no bracket found within 2^-60 below T0");
      }
      hi = lo;
      lo = probe(lo.x - step);
      if (done(lo)) return finish(lo);
    }
  }

  // Illinois false position; a bisection is forced whenever two steps
  // fail to halve the bracket.
  double h_lo = lo.h;
  double h_hi = hi.h;
  int stale_side = 0;
  double width_before = hi.x - lo.x;
  int since_check = 0;
  bool force_bisect = false;
  while (result.iterations < kMaxSolverIterations) {
    const double width = hi.x - lo.x;
    if (width <= 4.0 * std::numeric_limits<double>::epsilon() *
                     std::max(1.0, std::abs(hi.x))) {
      return finish(std::abs(lo.residual) < std::abs(hi.residual) ? lo : hi);
    }
    double x = 0.5 * (lo.x + hi.x);
    if (!force_bisect && std::isfinite(h_lo) && std::isfinite(h_hi)) {
      const double candidate = (lo.x * h_hi - hi.x * h_lo) / (h_hi - h_lo);
      if (candidate > lo.x && candidate < hi.x) x = candidate;
    }
    force_bisect = false;

    const Probe p = probe(x);
    if (done(p)) return finish(p);
    if (p.h < 0.0) {
      lo = p;
      h_lo = p.h;
      if (stale_side == -1) h_hi *= 0.5;
      stale_side = -1;
    } else {
      hi = p;
      h_hi = p.h;
      if (stale_side == 1) h_lo *= 0.5;
      stale_side = 1;
    }
    if (++since_check == 2) {
      force_bisect = (hi.x - lo.x) > 0.5 * width_before;
      width_before = hi.x - lo.x;
      since_check = 0;
    }
  }
  throw SolverError("equilibrium solve did not converge within " +
                    std::to_string(kMaxSolverIterations) + " iterations");
}

double narrowband_equilibrium(double f, const Boost& boost, double t0,
                              double rel_tol) {
  require_positive(f, "band frequency");
  require_positive(t0, "bath temperature");
  const double beta = boost.beta();
  const double g = boost.gamma();
  // Smallest occupation exponent, reached head-on (theta0 = 0). Factoring
  // e^-x_min out of the integrand keeps it representable for large f.
  const double x_min = f / (g * t0 * (1.0 + beta));
  auto integrand = [&](double th) {
    const double s = std::sin(th);
    const double d = 1.0 + beta * std::cos(th);
    const double x = f / (g * t0 * d);
    return s * s / (d * d * d) * std::exp(-(x - x_min)) / -std::expm1(-x);
  };
  const QuadratureResult q = integrate_finite(integrand, 0.0, kPi, rel_tol);
  if (!(q.value > 0.0) || !std::isfinite(q.value)) {
    throw OverflowGuardError(
        "band balance right-hand side underflows; frequency too large");
  }
  const double log_rhs = std::log(2.0 / (kPi * g * g * g)) + std::log(q.value) - x_min;
  // n(f / T_bar) = R  =>  f / T_bar = log(1 + 1/R).
  const double y = log_rhs < 0.0 ? -log_rhs + std::log1p(std::exp(log_rhs))
                                 : std::log1p(std::exp(-log_rhs));
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw OverflowGuardError("band balance left-hand side not invertible");
  }
  return f / y;
}

double low_frequency_limit(const Boost& boost, double t0) {
  require_positive(t0, "bath temperature");
  const double beta = boost.beta();
  const double g = boost.gamma();
  const QuadratureResult q = integrate_finite(
      [beta](double th) {
        const double s = std::sin(th);
        const double d = 1.0 + beta * std::cos(th);
        return s * s / (d * d);
      },
      0.0, kPi, 1e-13);
  return 2.0 / (kPi * g * g) * t0 * q.value;
}

double high_frequency_limit(const Boost& boost, double t0) {
  require_positive(t0, "bath temperature");
  const double beta = boost.beta();
  return t0 * std::sqrt((1.0 + beta) / (1.0 - beta));
}

ComparatorLaws comparator_laws(const Boost& boost, double t0) {
  require_positive(t0, "bath temperature");
  return ComparatorLaws{t0 / boost.gamma(), boost.gamma() * t0, t0};
}

}  // namespace rtherm
