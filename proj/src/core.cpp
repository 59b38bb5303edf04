#include "rtherm/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rtherm/errors.hpp"

namespace rtherm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

Boost make_boost(double beta) {
  if (!(beta >= 0.0 && beta <= kMaxBeta)) {
    throw DomainError("beta = " + fmt(beta) +
                      " outside admissible interval [0, 1 - 1e-6]");
  }
  return Boost(beta, 1.0 / std::sqrt(1.0 - beta * beta));
}

AbsorptionProfile AbsorptionProfile::gray(double a) {
  if (!in_unit_interval(a)) {
    throw DomainError("gray absorptivity " + fmt(a) + " outside [0, 1]");
  }
  return AbsorptionProfile(Gray{a});
}

AbsorptionProfile AbsorptionProfile::narrowband(double center, double width) {
  if (!(center > 0.0) || !std::isfinite(center)) {
    throw DomainError("band center must be positive and finite, got " +
                      fmt(center));
  }
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw DomainError("band width must be positive and finite, got " +
                      fmt(width));
  }
  return AbsorptionProfile(Band{center, width});
}

AbsorptionProfile AbsorptionProfile::piecewise(
    std::vector<Breakpoint> breakpoints) {
  if (breakpoints.size() < 2) {
    throw DomainError("piecewise profile needs at least two breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const auto& bp = breakpoints[i];
    if (!(bp.omega >= 0.0) || !std::isfinite(bp.omega)) {
      throw DomainError("breakpoint frequency " + fmt(bp.omega) +
                        " must be finite and non-negative");
    }
    if (!in_unit_interval(bp.value)) {
      throw DomainError("breakpoint absorptivity " + fmt(bp.value) +
                        " outside [0, 1]");
    }
    if (i > 0 && !(bp.omega > breakpoints[i - 1].omega)) {
      throw DomainError("breakpoint frequencies must be strictly increasing");
    }
  }
  if (breakpoints.back().value != 0.0) {
    throw DomainError(
        "last breakpoint closes the support and must carry absorptivity 0");
  }
  return AbsorptionProfile(Piecewise{std::move(breakpoints)});
}

AbsorptionProfile::Kind AbsorptionProfile::kind() const noexcept {
  return std::visit(overloaded{[](const Gray&) { return Kind::gray; },
                               [](const Band&) { return Kind::narrowband; },
                               [](const Piecewise&) { return Kind::piecewise; }},
                    rep_);
}

double AbsorptionProfile::operator()(double omega) const {
  if (!(omega >= 0.0)) {
    throw DomainError("absorptivity requested at negative frequency " +
                      fmt(omega));
  }
  return std::visit(
      overloaded{
          [](const Gray& g) { return g.a; },
          [omega](const Band& b) {
            return (omega >= b.center && omega <= b.center + b.width) ? 1.0
                                                                      : 0.0;
          },
          [omega](const Piecewise& p) {
            const auto& pts = p.points;
            if (omega < pts.front().omega) return 0.0;
            // Last breakpoint i with omega_i <= omega.
            std::size_t lo = 0;
            std::size_t hi = pts.size();
            while (hi - lo > 1) {
              const std::size_t mid = (lo + hi) / 2;
              if (pts[mid].omega <= omega) {
                lo = mid;
              } else {
                hi = mid;
              }
            }
            return pts[lo].value;
          }},
      rep_);
}

std::vector<Segment> AbsorptionProfile::segments() const {
  return std::visit(
      overloaded{
          [](const Gray& g) {
            std::vector<Segment> out;
            if (g.a > 0.0) {
              out.push_back({0.0, std::numeric_limits<double>::infinity(), g.a});
            }
            return out;
          },
          [](const Band& b) {
            return std::vector<Segment>{{b.center, b.center + b.width, 1.0}};
          },
          [](const Piecewise& p) {
            std::vector<Segment> out;
            for (std::size_t i = 0; i + 1 < p.points.size(); ++i) {
              if (p.points[i].value > 0.0) {
                out.push_back(
                    {p.points[i].omega, p.points[i + 1].omega, p.points[i].value});
              }
            }
            return out;
          }},
      rep_);
}

bool AbsorptionProfile::is_zero() const { return segments().empty(); }

AbsorptionProfile AbsorptionProfile::scaled(double c) const {
  if (!(c > 0.0 && c <= 1.0)) {
    throw DomainError("profile scale factor " + fmt(c) + " outside (0, 1]");
  }
  return std::visit(
      overloaded{
          [c](const Gray& g) { return gray(c * g.a); },
          [c](const Band& b) {
            // A band scaled below 1 is a two-segment piecewise profile.
            if (c == 1.0) return narrowband(b.center, b.width);
            return piecewise({{b.center, c}, {b.center + b.width, 0.0}});
          },
          [c](const Piecewise& p) {
            auto pts = p.points;
            for (auto& bp : pts) bp.value *= c;
            return piecewise(std::move(pts));
          }},
      rep_);
}

std::string AbsorptionProfile::describe() const {
  return std::visit(
      overloaded{[](const Gray& g) { return "gray:" + fmt(g.a); },
                 [](const Band& b) {
                   return "band:" + fmt(b.center) + ":" + fmt(b.width);
                 },
                 [](const Piecewise& p) {
                   return "piecewise(" + std::to_string(p.points.size()) +
                          " breakpoints)";
                 }},
      rep_);
}

double absorption_value(const AbsorptionProfile& profile, double omega) {
  return profile(omega);
}

EquationOfState EquationOfState::constant_cv(double cv, double e_ref,
                                             double s_ref) {
  if (!(cv > 0.0) || !std::isfinite(cv)) {
    throw DomainError("heat capacity must be positive, got " + fmt(cv));
  }
  if (!(e_ref > 0.0) || !std::isfinite(e_ref)) {
    throw DomainError("reference energy must be positive, got " + fmt(e_ref));
  }
  if (!std::isfinite(s_ref)) {
    throw DomainError("reference entropy must be finite");
  }
  return EquationOfState(Kind::constant_cv, cv, e_ref, s_ref);
}

EquationOfState EquationOfState::power_law(double a, double alpha) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("power-law prefactor must be positive, got " + fmt(a));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("power-law exponent " + fmt(alpha) +
                      " outside (0, 1); entropy would not be strictly concave");
  }
  return EquationOfState(Kind::power_law, a, alpha, 0.0);
}

double EquationOfState::temperature(double energy) const {
  if (!(energy > 0.0)) {
    throw DomainError("energy must be positive, got " + fmt(energy));
  }
  if (kind_ == Kind::constant_cv) return energy / p1_;
  return std::pow(energy, 1.0 - p2_) / (p1_ * p2_);
}

double EquationOfState::entropy(double energy, double /*volume*/) const {
  if (!(energy > 0.0)) {
    throw DomainError("energy must be positive, got " + fmt(energy));
  }
  if (kind_ == Kind::constant_cv) return p3_ + p1_ * std::log(energy / p2_);
  return p1_ * std::pow(energy, p2_);
}

double EquationOfState::energy_of_temperature(double temperature) const {
  if (!(temperature > 0.0)) {
    throw DomainError("temperature must be positive, got " + fmt(temperature));
  }
  if (kind_ == Kind::constant_cv) return p1_ * temperature;
  return std::pow(p1_ * p2_ * temperature, 1.0 / (1.0 - p2_));
}

std::string EquationOfState::describe() const {
  if (kind_ == Kind::constant_cv) {
    return "cv:" + fmt(p1_) + ":" + fmt(p2_) + ":" + fmt(p3_);
  }
  return "power:" + fmt(p1_) + ":" + fmt(p2_);
}

double eos_temperature(const EquationOfState& eos, double energy) {
  return eos.temperature(energy);
}

double eos_entropy(const EquationOfState& eos, double energy, double volume) {
  return eos.entropy(energy, volume);
}

double eos_energy_of_temperature(const EquationOfState& eos,
                                 double temperature) {
  return eos.energy_of_temperature(temperature);
}

}  // namespace rtherm
