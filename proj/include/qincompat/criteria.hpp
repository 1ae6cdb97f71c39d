// Copyright 2026 The qincompat Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QINCOMPAT_CRITERIA_HPP_
#define QINCOMPAT_CRITERIA_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "qincompat/incompatibility.hpp"
#include "qincompat/linalg.hpp"
#include "qincompat/states.hpp"

namespace qincompat {

inline constexpr double kViolationSlack = 1e-10;
inline constexpr double kCriteriaUnitTol = 1e-9;
inline constexpr double kAbsentBranch = 1e-12;

struct WitnessReport {
  double variance_sum = 0.0;
  double bound = 0.0;
  bool violated = false;
  double margin = 0.0;  // bound - variance_sum
};

/// Bob's side after Alice observes one outcome of her spin measurement.
struct ConditionalBranch {
  double probability = 0.0;
  std::optional<Vec3> bob_bloch;  // empty when probability < 1e-12
};

struct ConditionalDistribution {
  ConditionalBranch plus;   // outcome +1
  ConditionalBranch minus;  // outcome -1
};

struct SteeringSetting {
  Vec3 alice;
  Vec3 bob;
};

struct SteeringReport {
  std::vector<double> inference_variances;
  double total = 0.0;
  double bound = 0.0;
  bool violated = false;
  double margin = 0.0;  // bound - total
};

namespace detail {

inline void require_unit(const Vec3& v, const char* who) {
  if (!v.finite() || std::abs(v.norm() - 1.0) > kCriteriaUnitTol)
    throw ValidationError(std::string(who) + " direction must be unit-norm");
}

inline void require_unit(const ObservableSet& set, const char* who) {
  for (std::size_t i = 0; i < set.size(); ++i)
    if (std::abs(set[i].norm() - 1.0) > kCriteriaUnitTol)
      throw InvalidDirection(i, std::string(who) + " direction must be unit-norm");
}

// tr_A[(P (x) I) rho] for a 2x2 operator P on Alice's qubit.
inline std::array<complex_t, 4> apply_alice_and_trace_out(const HermMat<2>& p, const HermMat<4>& rho) {
  std::array<complex_t, 4> bob{};
  for (std::size_t ib = 0; ib < 2; ++ib)
    for (std::size_t jb = 0; jb < 2; ++jb) {
      complex_t s = 0.0;
      for (std::size_t ia = 0; ia < 2; ++ia)
        for (std::size_t ka = 0; ka < 2; ++ka) s += p(ia, ka) * rho(2 * ka + ib, 2 * ia + jb);
      bob[ib * 2 + jb] = s;
    }
  return bob;
}

}  // namespace detail

/// Sum of joint-observable variances against the separable-state ceiling
/// I(alice) + I(bob). Directions are paired by index.
inline WitnessReport entanglement_witness(const TwoQubitState& rho, const ObservableSet& alice,
                                          const ObservableSet& bob) {
  if (alice.size() != bob.size()) throw ValidationError("alice and bob need the same number of directions");
  detail::require_unit(alice, "alice");
  detail::require_unit(bob, "bob");

  WitnessReport r;
  for (std::size_t i = 0; i < alice.size(); ++i)
    r.variance_sum += operator_variance(joint_observable(alice[i], bob[i]), rho);
  r.bound = incompatibility(alice).value + incompatibility(bob).value;
  r.margin = r.bound - r.variance_sum;
  r.violated = r.variance_sum < r.bound - kViolationSlack;
  return r;
}

/// Born-rule outcome probabilities for Alice's spin along a_dir and Bob's
/// resulting conditional Bloch vectors. b_dir is accepted for symmetry with
/// the inference-variance call but does not affect the branches.
inline ConditionalDistribution conditional_stats(const TwoQubitState& rho, Vec3 a_dir, Vec3 b_dir) {
  detail::require_unit(a_dir, "alice");
  detail::require_unit(b_dir, "bob");

  const auto branch = [&](double outcome) {
    // Projector (I + A a.sigma)/2; tr_A[(P (x) I) rho (P (x) I)] = tr_A[(P (x) I) rho].
    const HermMat<2> proj = 0.5 * spin_matrix(outcome * a_dir, 1.0);
    const auto bob = detail::apply_alice_and_trace_out(proj, rho.matrix());
    ConditionalBranch b;
    b.probability = (bob[0] + bob[3]).real();
    if (b.probability < kAbsentBranch) {
      b.probability = std::max(b.probability, 0.0);
      return b;
    }
    const double inv = 1.0 / b.probability;
    // r = (2 Re rho01, -2 Im rho01, rho00 - rho11) for the normalized block.
    b.bob_bloch = Vec3{2.0 * bob[1].real() * inv, -2.0 * bob[1].imag() * inv, (bob[0] - bob[3]).real() * inv};
    return b;
  };

  ConditionalDistribution d;
  d.plus = branch(1.0);
  d.minus = branch(-1.0);
  return d;
}

/// Average conditional variance of Bob's +-1 outcome along b_dir when the
/// conditional mean given Alice's outcome is used as the estimate.
inline double inference_variance_min(const TwoQubitState& rho, Vec3 a_dir, Vec3 b_dir) {
  const ConditionalDistribution d = conditional_stats(rho, a_dir, b_dir);
  double total = 0.0;
  for (const ConditionalBranch* b : {&d.plus, &d.minus}) {
    if (!b->bob_bloch) continue;
    const double mean = dot(b_dir, *b->bob_bloch);
    total += b->probability * (1.0 - mean * mean);
  }
  return std::clamp(total, 0.0, 1.0);
}

/// Summed inference variances against the incompatibility of Bob's axes.
inline SteeringReport steering_test(const TwoQubitState& rho, const std::vector<SteeringSetting>& settings) {
  if (settings.empty()) throw ValidationError("steering test needs at least one setting");
  std::vector<Vec3> bob_dirs;
  bob_dirs.reserve(settings.size());
  SteeringReport r;
  for (const auto& s : settings) {
    const double v = inference_variance_min(rho, s.alice, s.bob);
    r.inference_variances.push_back(v);
    r.total += v;
    bob_dirs.push_back(s.bob);
  }
  r.bound = incompatibility(ObservableSet(std::move(bob_dirs))).value;
  r.margin = r.bound - r.total;
  r.violated = r.total < r.bound - kViolationSlack;
  return r;
}

}  // namespace qincompat

#endif  // QINCOMPAT_CRITERIA_HPP_
