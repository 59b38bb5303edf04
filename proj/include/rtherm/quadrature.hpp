#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature.
//
// The interval with the largest local error is bisected until the summed
// error estimate falls below max(rel_tol * |value|, kAbsFloor). Local errors
// use the QUADPACK qk15 scaling of |K15 - G7|. Results are deterministic:
// ties in the work queue are broken by interval position.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "rtherm/errors.hpp"

namespace rtherm {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr double kMinRelTol = 1e-14;
inline constexpr double kMaxRelTol = 1e-2;
inline constexpr std::size_t kMaxIntervals = std::size_t{1} << 20;

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool splittable;
};

template <class F>
Panel gauss_kronrod_15(const F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_centre = f(centre);
  double kronrod = f_centre * kKronrodWeights[7];
  double gauss = f_centre * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f_left{};
  std::array<double, 7> f_right{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    f_left[j] = f(centre - dx);
    f_right[j] = f(centre + dx);
    const double pair = f_left[j] + f_right[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(f_left[j]) + std::abs(f_right[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(f_centre - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    asc += kKronrodWeights[j] *
           (std::abs(f_left[j] - mean) + std::abs(f_right[j] - mean));
  }
  const double scale = std::abs(half);
  const double value = kronrod * half;
  abs_sum *= scale;
  asc *= scale;
  double error = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && error != 0.0) {
    error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Roundoff floor; small enough that rel_tol = 1e-14 stays reachable.
  if (abs_sum > std::numeric_limits<double>::min() / (4.0 * eps)) {
    error = std::max(4.0 * eps * abs_sum, error);
  }
  // Stop splitting once the abscissae can no longer be resolved.
  const bool splittable =
      std::abs(b - a) > 200.0 * eps * std::max(std::abs(a), std::abs(b)) &&
      std::abs(b - a) > std::numeric_limits<double>::min() * 1e3;
  return Panel{a, b, value, error, splittable};
}

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

inline void require_finite(const Panel& p) {
  if (!std::isfinite(p.value) || !std::isfinite(p.error)) {
    throw DomainError("integrand is not finite on the integration interval");
  }
}

inline void check_tolerance(double rel_tol) {
  if (!(rel_tol >= kMinRelTol && rel_tol <= kMaxRelTol)) {
    throw DomainError("relative tolerance outside [1e-14, 1e-2]");
  }
}

}  // namespace detail

inline constexpr double kAbsFloor = 1e-300;

// Integrates f over the finite interval [a, b].
template <class F>
QuadratureResult integrate_finite(const F& f, double a, double b,
                                  double rel_tol = kDefaultRelTol) {
  using detail::Panel;
  detail::check_tolerance(rel_tol);
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integration bounds must be finite with a < b");
  }

  std::priority_queue<Panel, std::vector<Panel>, detail::PanelOrder> work;
  // Panels that cannot be refined further keep contributing their error.
  double frozen_value = 0.0;
  double frozen_error = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 1;

  Panel first = detail::gauss_kronrod_15(f, a, b);
  evaluations += 15;
  detail::require_finite(first);
  double total_value = first.value;
  double total_error = first.error;
  work.push(first);

  auto converged = [&] {
    return total_error <= std::max(rel_tol * std::abs(total_value), kAbsFloor);
  };

  while (!converged()) {
    if (work.empty() || intervals >= kMaxIntervals) {
      throw AccuracyError(
          "adaptive quadrature did not reach relative tolerance " +
              std::to_string(rel_tol) + " within the subdivision budget",
          total_value, total_error);
    }
    Panel worst = work.top();
    work.pop();
    if (!worst.splittable) {
      frozen_value += worst.value;
      frozen_error += worst.error;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = detail::gauss_kronrod_15(f, worst.a, mid);
    Panel right = detail::gauss_kronrod_15(f, mid, worst.b);
    evaluations += 30;
    detail::require_finite(left);
    detail::require_finite(right);
    ++intervals;
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
  }

  // Re-sum from the panels to shed the drift of the running updates.
  double value = frozen_value;
  double error = frozen_error;
  std::vector<Panel> rest;
  rest.reserve(work.size());
  while (!work.empty()) {
    rest.push_back(work.top());
    work.pop();
  }
  std::sort(rest.begin(), rest.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const auto& p : rest) {
    value += p.value;
    error += p.error;
  }
  return QuadratureResult{value, error, evaluations};
}

// Integrates f over [0, inf) through omega = scale * u / (1 - u), u in [0, 1).
// The integrand must decay at least exponentially. scale only moves the
// bulk of the integrand to the middle of [0, 1); it does not change the
// result.
template <class F>
QuadratureResult integrate_semi_infinite(const F& f,
                                         double rel_tol = kDefaultRelTol,
                                         double scale = 1.0) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("semi-infinite scale must be positive and finite");
  }
  auto mapped = [&f, scale](double u) {
    const double w = 1.0 - u;
    if (w <= 0.0) return 0.0;
    const double x = scale * u / w;
    if (!std::isfinite(x)) return 0.0;
    const double y = f(x);
    if (y == 0.0) return 0.0;
    return y * scale / (w * w);
  };
  return integrate_finite(mapped, 0.0, 1.0, rel_tol);
}

}  // namespace rtherm
