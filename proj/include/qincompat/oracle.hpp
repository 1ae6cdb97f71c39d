// Copyright 2026 The qincompat Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QINCOMPAT_ORACLE_HPP_
#define QINCOMPAT_ORACLE_HPP_

// Brute-force minimization of the variance sum over qubit states. Nothing
// here touches the moment matrix or its spectrum, so the results are an
// independent check on the closed form.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

#include "qincompat/incompatibility.hpp"
#include "qincompat/states.hpp"

namespace qincompat {

struct OracleResult {
  double value = 0.0;
  Vec3 argmin;
  long points_evaluated = 0;
  double resolution_bound = 0.0;  // value is within this of the true minimum
};

namespace detail {

// Variance sum of the pure state with Bloch vector r.
inline double pure_variance_sum(const ObservableSet& set, Vec3 r) {
  double total = 0.0;
  for (const Vec3& n : set) {
    const double proj = dot(n, r);
    total += n.norm2() - proj * proj;
  }
  return total;
}

// Point i of an n-point golden-angle spiral on the unit sphere.
inline Vec3 fibonacci_point(long i, long n) {
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden_angle * static_cast<double>(i);
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

// Spherical chart (theta, phi) rotated so the starting point sits at
// theta = pi/2, phi = 0, away from the chart's poles.
struct LocalChart {
  Vec3 e0, e1, e2;

  explicit LocalChart(Vec3 start) : e0(normalized(start)) {
    const Vec3 helper = std::abs(e0.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = normalized(cross(e0, helper));
    e2 = cross(e0, e1);
  }

  Vec3 at(double theta, double phi) const {
    const double s = std::sin(theta);
    return (s * std::cos(phi)) * e0 + (s * std::sin(phi)) * e1 + std::cos(theta) * e2;
  }
};

}  // namespace detail

inline constexpr double kOracleFinalStep = 1e-7;

/// Fibonacci lattice scan followed by compass (coordinate) descent with
/// halving steps. Deterministic: the lowest lattice index wins ties and the
/// descent visits coordinates in a fixed order.
inline OracleResult sphere_grid_min(const ObservableSet& set, long num_points) {
  if (num_points < 12) throw ValidationError("sphere_grid_min needs at least 12 lattice points");

  long best_index = 0;
  double best = std::numeric_limits<double>::infinity();
  for (long i = 0; i < num_points; ++i) {
    const double f = detail::pure_variance_sum(set, detail::fibonacci_point(i, num_points));
    if (f < best) {
      best = f;
      best_index = i;
    }
  }

  OracleResult out;
  out.points_evaluated = num_points;

  // At angle d from the optimum, f - f_min <= (l1 - l3) sin^2 d <= tau1 d^2,
  // and the lattice covering radius stays below 3/sqrt(n) for n >= 12.
  double tau1 = 0.0;
  for (const Vec3& n : set) tau1 += n.norm2();
  out.resolution_bound = tau1 * 9.0 / static_cast<double>(num_points);

  const detail::LocalChart chart(detail::fibonacci_point(best_index, num_points));
  double theta = std::numbers::pi / 2.0;
  double phi = 0.0;
  double step = 2.0 * std::numbers::pi / std::sqrt(static_cast<double>(num_points));
  double current = detail::pure_variance_sum(set, chart.at(theta, phi));

  while (step >= kOracleFinalStep) {
    bool improved = false;
    for (int coord = 0; coord < 2; ++coord) {
      for (double dir : {1.0, -1.0}) {
        for (;;) {
          const double t = coord == 0 ? theta + dir * step : theta;
          const double p = coord == 1 ? phi + dir * step : phi;
          const double f = detail::pure_variance_sum(set, chart.at(t, p));
          ++out.points_evaluated;
          if (!(f < current)) break;
          current = f;
          theta = t;
          phi = p;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  const Vec3 refined = normalized(chart.at(theta, phi));
  out.argmin = refined;
  out.value = detail::pure_variance_sum(set, refined);
  return out;
}

/// Smallest variance sum across `count` seeded Bloch vectors drawn uniformly
/// from the unit ball.
inline double mixed_sample_floor(const ObservableSet& set, long count, std::uint64_t seed) {
  if (count < 1) throw ValidationError("mixed_sample_floor needs at least one sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double floor = std::numeric_limits<double>::infinity();
  for (long k = 0; k < count; ++k) {
    Vec3 d{gauss(rng), gauss(rng), gauss(rng)};
    while (!(d.norm() > 1e-12)) d = {gauss(rng), gauss(rng), gauss(rng)};
    const double radius = std::cbrt(unif(rng));
    const QubitState s(std::min(radius, 1.0) * normalized(d));
    floor = std::min(floor, uncertainty_sum(set, s));
  }
  return floor;
}

}  // namespace qincompat

#endif  // QINCOMPAT_ORACLE_HPP_
