// Copyright 2026 The qincompat Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QINCOMPAT_TESTS_TEST_SUPPORT_HPP_
#define QINCOMPAT_TESTS_TEST_SUPPORT_HPP_

// Seeded generators shared by the property-style tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qincompat/incompatibility.hpp"
#include "qincompat/linalg.hpp"
#include "qincompat/states.hpp"

namespace qincompat::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  Vec3 unit() {
    for (;;) {
      const Vec3 v{gauss(), gauss(), gauss()};
      if (v.norm() > 1e-6) return normalized(v);
    }
  }

  Vec3 in_ball() { return std::cbrt(uniform(0.0, 1.0)) * unit(); }

  ObservableSet unit_set(int n) {
    std::vector<Vec3> d;
    for (int i = 0; i < n; ++i) d.push_back(unit());
    return ObservableSet(std::move(d));
  }

  /// Directions uniform on the sphere with lengths in [lo, hi].
  ObservableSet scaled_set(int n, double lo = 0.2, double hi = 2.0) {
    std::vector<Vec3> d;
    for (int i = 0; i < n; ++i) d.push_back(uniform(lo, hi) * unit());
    return ObservableSet(std::move(d));
  }

  SymMat3 sym(double lo = -2.0, double hi = 2.0) {
    return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi), uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
  }

  /// Rotation from a random unit quaternion.
  std::array<Vec3, 3> rotation() {
    double q[4] = {gauss(), gauss(), gauss(), gauss()};
    const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    for (double& c : q) c /= n;
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    return {Vec3{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
            Vec3{2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
            Vec3{2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}};
  }

  /// rho = G G^dagger / tr for a complex Gaussian G: full-rank mixed states.
  TwoQubitState mixed_two_qubit() {
    complex_t g[4][4];
    for (auto& row : g)
      for (auto& v : row) v = {gauss(), gauss()};
    HermMat<4> rho;
    double tr = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) tr += std::norm(g[i][k]);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        complex_t s = 0.0;
        for (std::size_t k = 0; k < 4; ++k) s += g[i][k] * std::conj(g[j][k]);
        rho.set(i, j, s / tr);
      }
    // Exact Hermitian symmetry so the strict 1e-12 check sees no roundoff.
    for (std::size_t i = 0; i < 4; ++i) {
      rho.set(i, i, rho(i, i).real());
      for (std::size_t j = i + 1; j < 4; ++j) rho.set(j, i, std::conj(rho(i, j)));
    }
    return TwoQubitState(rho);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Vec3 rotate(const std::array<Vec3, 3>& r, Vec3 v) { return {dot(r[0], v), dot(r[1], v), dot(r[2], v)}; }

inline double max_abs_diff(const SymMat3& a, const SymMat3& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace qincompat::testing

#endif  // QINCOMPAT_TESTS_TEST_SUPPORT_HPP_
