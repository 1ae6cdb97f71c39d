// Copyright 2026 The qincompat Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "qincompat/incompatibility.hpp"
#include "qincompat/oracle.hpp"
#include "test_support.hpp"

namespace qincompat {
namespace {

const ObservableSet kXyz{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

TEST(SphereGridMin, Examples) {
  const auto xyz = sphere_grid_min(kXyz, 1000);
  EXPECT_NEAR(xyz.value, 2.0, 1e-6);
  EXPECT_NEAR(xyz.argmin.norm(), 1.0, 1e-10);

  const auto pair = sphere_grid_min(ObservableSet{{1, 0, 0}, {0.5, std::sqrt(3.0) / 2, 0}}, 1000);
  EXPECT_NEAR(pair.value, 0.5, 1e-5);

  const ObservableSet four{{1, 0, 0},
                           {0.5, std::sqrt(3.0) / 2, 0},
                           {0.5, 0.5, 1 / std::sqrt(2.0)},
                           {1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)}};
  const auto ex = sphere_grid_min(four, 20000);
  EXPECT_NEAR(ex.value, 0.94955, 1e-4);
  EXPECT_GE(ex.points_evaluated, 20000);
}

TEST(SphereGridMin, RejectsTinyLattice) { EXPECT_THROW(sphere_grid_min(kXyz, 11), ValidationError); }

TEST(SphereGridMin, AgreesWithClosedFormOnRandomSets) {
  testing::Gen gen(41);
  for (int k = 0; k < 200; ++k) {
    const auto set = gen.scaled_set(gen.integer(2, 6));
    const auto o = sphere_grid_min(set, 20000);
    const double closed = incompatibility(set).value;
    EXPECT_LE(std::abs(o.value - closed), o.resolution_bound);
    EXPECT_LE(std::abs(o.value - closed), 1e-5);
    EXPECT_LE(std::abs(uncertainty_sum(set, QubitState(o.argmin)) - closed), 1e-5);
    // The oracle can never undercut the true minimum.
    EXPECT_GE(o.value, closed - 1e-12);
  }
}

TEST(SphereGridMin, Deterministic) {
  testing::Gen gen(42);
  const auto set = gen.scaled_set(5);
  const auto a = sphere_grid_min(set, 5000);
  const auto b = sphere_grid_min(set, 5000);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.argmin, b.argmin);
  EXPECT_EQ(a.points_evaluated, b.points_evaluated);
}

// The resolution bound assumes a covering radius below 3/sqrt(n).
TEST(FibonacciLattice, CoveringRadius) {
  testing::Gen gen(43);
  for (long n : {12L, 50L, 1000L, 20000L}) {
    double worst = 0.0;
    for (int k = 0; k < 300; ++k) {
      const Vec3 p = gen.unit();
      double best = std::numeric_limits<double>::infinity();
      for (long i = 0; i < n; ++i) {
        const double ang = std::acos(std::clamp(dot(p, detail::fibonacci_point(i, n)), -1.0, 1.0));
        best = std::min(best, ang);
      }
      worst = std::max(worst, best);
    }
    EXPECT_LT(worst, 3.0 / std::sqrt(static_cast<double>(n))) << "n = " << n;
  }
}

TEST(MixedSampleFloor, Examples) {
  EXPECT_GE(mixed_sample_floor(kXyz, 2000, 0), 2.0 - 1e-10);
  EXPECT_GE(mixed_sample_floor(ObservableSet{{0, 0, 1}}, 2000, 0), 0.0);

  const Vec3 n{0, 0, 1};
  const double few = mixed_sample_floor(ObservableSet{n, n}, 10, 3);
  const double many = mixed_sample_floor(ObservableSet{n, n}, 20000, 3);
  EXPECT_GE(many, 0.0);
  EXPECT_LE(many, few);
  EXPECT_LT(many, 0.05);
}

TEST(MixedSampleFloor, SeededAndAboveBound) {
  testing::Gen gen(44);
  EXPECT_EQ(mixed_sample_floor(kXyz, 100, 7), mixed_sample_floor(kXyz, 100, 7));
  for (int k = 0; k < 50; ++k) {
    const auto set = gen.scaled_set(gen.integer(1, 6));
    EXPECT_GE(mixed_sample_floor(set, 200, static_cast<std::uint64_t>(k)), incompatibility(set).value - 1e-10);
  }
  EXPECT_THROW(mixed_sample_floor(kXyz, 0, 0), ValidationError);
}

}  // namespace
}  // namespace qincompat
