#pragma once

// Shared vocabulary for the whole library.
//
// Units: hbar = k = c = 1, and the radiative coupling constant times the
// hole area is 1. Frequencies and temperatures therefore share one unit and
// every flux is an energy rate per unit (coupling x area).

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rtherm {

inline constexpr double kPi = 3.14159265358979323846;
// Largest speed ratio accepted; keeps the Lorentz factor finite.
inline constexpr double kMaxBeta = 1.0 - 1e-6;

// Kinematics of the bath relative to the thermometer frame.
class Boost {
 public:
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }

  friend Boost make_boost(double beta);

 private:
  Boost(double beta, double gamma) : beta_(beta), gamma_(gamma) {}
  double beta_;
  double gamma_;
};

// Throws DomainError unless 0 <= beta <= kMaxBeta.
Boost make_boost(double beta);

// One contiguous stretch [lo, hi) of the spectrum where the absorptivity is
// constant and non-zero. hi may be +infinity.
struct Segment {
  double lo;
  double hi;
  double value;
};

struct Breakpoint {
  double omega;
  double value;
};

// Frequency-dependent absorptivity A(omega) in [0, 1]. By Kirchhoff's law it
// is also the emissivity of the thermometer body.
class AbsorptionProfile {
 public:
  enum class Kind { gray, narrowband, piecewise };

  // A(omega) = a everywhere.
  static AbsorptionProfile gray(double a);
  // A(omega) = 1 on [center, center + width], 0 elsewhere.
  static AbsorptionProfile narrowband(double center, double width);
  // A(omega) = value_i on [omega_i, omega_{i+1}); 0 below the first
  // breakpoint. The last breakpoint closes the support and must carry 0.
  static AbsorptionProfile piecewise(std::vector<Breakpoint> breakpoints);

  Kind kind() const noexcept;
  double operator()(double omega) const;

  // Non-zero constant stretches in increasing order.
  std::vector<Segment> segments() const;
  bool is_zero() const;
  // Returns c * A with c in (0, 1].
  AbsorptionProfile scaled(double c) const;

  std::string describe() const;

 private:
  struct Gray {
    double a;
  };
  struct Band {
    double center;
    double width;
  };
  struct Piecewise {
    std::vector<Breakpoint> points;
  };
  using Rep = std::variant<Gray, Band, Piecewise>;

  explicit AbsorptionProfile(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

// Evaluates A(omega); throws DomainError for negative omega.
double absorption_value(const AbsorptionProfile& profile, double omega);

// Thermometer body: invertible E <-> T map derived from a strictly concave
// entropy S(E, V). V is carried for completeness but never changes.
class EquationOfState {
 public:
  enum class Kind { constant_cv, power_law };

  // S = s_ref + cv ln(E / e_ref), T = E / cv.
  static EquationOfState constant_cv(double cv, double e_ref = 1.0,
                                     double s_ref = 0.0);
  // S = a E^alpha, T = E^(1 - alpha) / (a alpha), alpha in (0, 1).
  static EquationOfState power_law(double a, double alpha);

  Kind kind() const noexcept { return kind_; }
  double temperature(double energy) const;
  double entropy(double energy, double volume) const;
  double energy_of_temperature(double temperature) const;

  std::string describe() const;

 private:
  EquationOfState(Kind kind, double p1, double p2, double p3)
      : kind_(kind), p1_(p1), p2_(p2), p3_(p3) {}
  Kind kind_;
  // constant_cv: (cv, e_ref, s_ref); power_law: (a, alpha, unused).
  double p1_;
  double p2_;
  double p3_;
};

double eos_temperature(const EquationOfState& eos, double energy);
double eos_entropy(const EquationOfState& eos, double energy, double volume);
double eos_energy_of_temperature(const EquationOfState& eos,
                                 double temperature);

}  // namespace rtherm
