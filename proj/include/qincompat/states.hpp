// Copyright 2026 The qincompat Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QINCOMPAT_STATES_HPP_
#define QINCOMPAT_STATES_HPP_

#include <cmath>
#include <string>

#include "qincompat/incompatibility.hpp"
#include "qincompat/linalg.hpp"

namespace qincompat {

/// M = offset * I + axis . sigma
struct PauliObservable {
  double offset = 0.0;
  Vec3 axis;
};

inline constexpr double kBlochNormTol = 1e-12;
inline constexpr double kPureTol = 1e-10;

/// Qubit state rho = (I + r . sigma) / 2, stored by its Bloch vector.
class QubitState {
 public:
  explicit QubitState(Vec3 bloch) : r_(bloch) {
    if (!r_.finite()) throw ValidationError("Bloch vector has non-finite components");
    if (r_.norm() > 1.0 + kBlochNormTol)
      throw ValidationError("Bloch vector norm " + std::to_string(r_.norm()) + " exceeds 1");
  }
  const Vec3& bloch() const { return r_; }
  bool is_pure() const { return std::abs(r_.norm() - 1.0) <= kPureTol; }

 private:
  Vec3 r_;
};

inline constexpr double kDensityHermTol = 1e-12;
inline constexpr double kDensityTraceTol = 1e-10;
inline constexpr double kDensityPsdTol = 1e-9;

/// Validated density matrix: Hermitian, unit trace, positive semidefinite.
template <std::size_t D>
class DensityMatrix {
 public:
  explicit DensityMatrix(const HermMat<D>& rho) : rho_(rho) {
    if (!rho_.finite()) throw ValidationError("density matrix has non-finite entries");
    const double defect = rho_.hermiticity_defect();
    if (defect > kDensityHermTol)
      throw ValidationError("density matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    const complex_t tr = rho_.trace();
    if (std::abs(tr - 1.0) > kDensityTraceTol)
      throw ValidationError("density matrix trace " + std::to_string(tr.real()) + " is not 1");
    if (!hermitian_psd_check(rho_, kDensityPsdTol))
      throw ValidationError("density matrix is not positive semidefinite");
  }
  const HermMat<D>& matrix() const { return rho_; }

 private:
  HermMat<D> rho_;
};

using TwoQubitState = DensityMatrix<4>;

inline HermMat<2> pauli_x() { return HermMat<2>({0, 1, 1, 0}, {0, 0, 0, 0}); }
inline HermMat<2> pauli_y() { return HermMat<2>({0, 0, 0, 0}, {0, -1, 1, 0}); }
inline HermMat<2> pauli_z() { return HermMat<2>({1, 0, 0, -1}, {0, 0, 0, 0}); }

/// a I + b_x sigma_x + b_y sigma_y + b_z sigma_z
inline HermMat<2> spin_matrix(Vec3 b, double a = 0.0) {
  return HermMat<2>({a + b.z, b.x, b.x, a - b.z}, {0.0, -b.y, b.y, 0.0});
}

inline HermMat<2> spin_matrix(const PauliObservable& m) { return spin_matrix(m.axis, m.offset); }

/// (I + r . sigma) / 2
inline HermMat<2> density_matrix(const QubitState& s) { return 0.5 * spin_matrix(s.bloch(), 1.0); }

/// Variance b^2 - (b . r)^2; the offset never contributes.
inline double qubit_variance(const PauliObservable& m, const QubitState& s) {
  const double proj = dot(m.axis, s.bloch());
  return m.axis.norm2() - proj * proj;
}

inline double uncertainty_sum(const ObservableSet& set, const QubitState& s) {
  double total = 0.0;
  for (const Vec3& n : set) {
    const double proj = dot(n, s.bloch());
    total += n.norm2() - proj * proj;
  }
  return total;
}

/// Right-hand side of Robertson's relation, (1/2)|<[M1, M2]>| = |(b1 x b2) . r|.
inline double robertson_bound(const PauliObservable& m1, const PauliObservable& m2, const QubitState& s) {
  return std::abs(dot(cross(m1.axis, m2.axis), s.bloch()));
}

/// tr(M^2 rho) - tr(M rho)^2 for a validated state.
template <std::size_t D>
double operator_variance(const HermMat<D>& m, const DensityMatrix<D>& rho) {
  const auto m2 = matmul(m, m);
  complex_t second = 0.0;
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t k = 0; k < D; ++k) second += m2[i * D + k] * rho.matrix()(k, i);
  const double first = trace_product(m, rho.matrix()).real();
  return second.real() - first * first;
}

/// Validates rho before evaluating.
template <std::size_t D>
double operator_variance(const HermMat<D>& m, const HermMat<D>& rho) {
  return operator_variance(m, DensityMatrix<D>(rho));
}

/// S_n (x) I + I (x) S_m
inline HermMat<4> joint_observable(Vec3 n, Vec3 m) {
  const HermMat<2> id = HermMat<2>::identity();
  return tensor_product(spin_matrix(n), id) + tensor_product(id, spin_matrix(m));
}

/// |psi-><psi-| with psi- = (|01> - |10>)/sqrt(2).
inline TwoQubitState singlet() {
  HermMat<4> rho;
  rho.set(1, 1, 0.5);
  rho.set(2, 2, 0.5);
  rho.set(1, 2, -0.5);
  rho.set(2, 1, -0.5);
  return TwoQubitState(rho);
}

/// p |psi-><psi-| + (1 - p) I/4
inline TwoQubitState werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("Werner parameter must lie in [0, 1]");
  return TwoQubitState(p * singlet().matrix() + ((1.0 - p) / 4.0) * HermMat<4>::identity());
}

inline TwoQubitState product_state(Vec3 alice_bloch, Vec3 bob_bloch) {
  return TwoQubitState(tensor_product(density_matrix(QubitState(alice_bloch)),
                                      density_matrix(QubitState(bob_bloch))));
}

/// Bloch vector r_k = tr(rho sigma_k) of a single-qubit density matrix.
inline Vec3 bloch_vector(const HermMat<2>& rho) {
  return {trace_product(rho, pauli_x()).real(), trace_product(rho, pauli_y()).real(),
          trace_product(rho, pauli_z()).real()};
}

inline QubitState qubit_state(const DensityMatrix<2>& rho) { return QubitState(bloch_vector(rho.matrix())); }

}  // namespace qincompat

#endif  // QINCOMPAT_STATES_HPP_
