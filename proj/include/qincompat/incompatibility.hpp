// Copyright 2026 The qincompat Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QINCOMPAT_INCOMPATIBILITY_HPP_
#define QINCOMPAT_INCOMPATIBILITY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qincompat/linalg.hpp"

namespace qincompat {

/// A direction whose norm is zero (or non-finite) was supplied.
class InvalidDirection : public ValidationError {
 public:
  InvalidDirection(std::size_t index, const std::string& what)
      : ValidationError("direction " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Trace powers that could not have come from a real symmetric matrix.
class InconsistentTraces : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Three pairwise angles that no triple of unit vectors in R^3 realizes.
class NonRealizableAngles : public ValidationError {
 public:
  explicit NonRealizableAngles(double min_gram_eigenvalue)
      : ValidationError("angle triple is not realizable by unit vectors (Gram eigenvalue " +
                        std::to_string(min_gram_eigenvalue) + ")"),
        min_eigenvalue_(min_gram_eigenvalue) {}
  double min_gram_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Ordered, non-empty list of nonzero spin axes. Lengths are arbitrary.
class ObservableSet {
 public:
  ObservableSet(std::vector<Vec3> directions) : dirs_(std::move(directions)) {
    if (dirs_.empty()) throw ValidationError("observable set needs at least one direction");
    for (std::size_t i = 0; i < dirs_.size(); ++i) {
      if (!dirs_[i].finite()) throw InvalidDirection(i, "non-finite component");
      if (!(dirs_[i].norm() > 0.0)) throw InvalidDirection(i, "zero-length direction");
    }
  }
  ObservableSet(std::initializer_list<Vec3> directions) : ObservableSet(std::vector<Vec3>(directions)) {}

  std::size_t size() const { return dirs_.size(); }
  const Vec3& operator[](std::size_t i) const { return dirs_[i]; }
  std::span<const Vec3> directions() const { return dirs_; }
  auto begin() const { return dirs_.begin(); }
  auto end() const { return dirs_.end(); }

 private:
  std::vector<Vec3> dirs_;
};

struct MomentMatrix {
  SymMat3 a;
  TraceTriple traces;
};

/// Shifted-cubic parameters: z^3 - 3 alpha^2 z - 2 beta = 0 with z = x - tau1/3.
struct CubicCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
};

enum class Method { closed_form, jacobi };

inline const char* to_string(Method m) { return m == Method::closed_form ? "closed_form" : "jacobi"; }

struct IncompatibilityResult {
  double value = 0.0;
  double lambda_max = 0.0;
  Vec3 optimizer;
  CubicCoefficients coefficients;
  TraceTriple traces;
  Method method = Method::closed_form;
};

/// A = sum_i n_i n_i^T.
inline MomentMatrix moment_matrix(const ObservableSet& set) {
  MomentMatrix m;
  for (const Vec3& n : set) m.a += SymMat3::outer(n);
  m.traces = sym3_traces(m.a);
  return m;
}

namespace detail {
inline constexpr double kRadicandClamp = 1e-9;
inline constexpr double kAlphaDegenerate = 1e-12;
}  // namespace detail

inline CubicCoefficients cubic_coefficients(const TraceTriple& t) {
  const double radicand = (3.0 * t.tau2 - t.tau1 * t.tau1) / 18.0;
  if (radicand < -detail::kRadicandClamp)
    throw InconsistentTraces("traces imply a negative spread (3*tau2 - tau1^2 < 0)");
  CubicCoefficients c;
  c.alpha = radicand > 0.0 ? std::sqrt(radicand) : 0.0;
  c.beta = t.tau1 * t.tau1 * t.tau1 / 27.0 + t.tau3 / 6.0 - t.tau1 * t.tau2 / 6.0;
  return c;
}

/// Same coefficients from the matrix itself, via D = A - (tau1/3) I:
/// alpha^2 = |D|_F^2 / 6 and beta = det(D) / 2. Avoids the cancellation in
/// 3*tau2 - tau1^2 when the spectrum is nearly triple.
inline CubicCoefficients cubic_coefficients(const SymMat3& a) {
  const double shift = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
  const SymMat3 d = a + (-shift) * SymMat3::identity();
  CubicCoefficients c;
  c.alpha = d.frobenius() / std::sqrt(6.0);
  c.beta = d.determinant() / 2.0;
  return c;
}

/// Same coefficients from pairwise dot products, valid only for unit axes.
/// Cross-check for cubic_coefficients on normalized sets.
inline CubicCoefficients cubic_coefficients_unit(const ObservableSet& set, double unit_tol = 1e-9) {
  const std::size_t n = set.size();
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(set[i].norm() - 1.0) > unit_tol) throw InvalidDirection(i, "direction is not unit-norm");

  std::vector<double> g(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i * n + j] = dot(set[i], set[j]);

  double pairs = 0.0;  // sum_{i<j} (n_i . n_j)^2
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs += g[i * n + j] * g[i * n + j];
  double triples = 0.0;  // sum_{i<j<k} (n_i.n_j)(n_j.n_k)(n_k.n_i)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) triples += g[i * n + j] * g[j * n + k] * g[k * n + i];

  const double nn = static_cast<double>(n);
  const double radicand = (pairs - nn * (nn - 3.0) / 6.0) / 3.0;
  if (radicand < -detail::kRadicandClamp) throw InconsistentTraces("negative spread from pairwise overlaps");
  CubicCoefficients c;
  c.alpha = radicand > 0.0 ? std::sqrt(radicand) : 0.0;
  // The pair term enters with a minus sign: expanding tau1^3/27 + tau3/6 - tau1*tau2/6
  // with tau1 = N, tau2 = N + 2P, tau3 = N + 6P + 6T gives (1 - N/3) P.
  c.beta = triples - (nn - 3.0) / 3.0 * pairs + nn * (2.0 * nn - 3.0) * (nn - 3.0) / 54.0;
  return c;
}

/// Largest root of the characteristic cubic, solved trigonometrically.
inline double lambda_max(const CubicCoefficients& c, double tau1) {
  const double shift = tau1 / 3.0;
  if (c.alpha <= detail::kAlphaDegenerate * (1.0 + std::abs(tau1))) return shift;
  double ratio = c.beta / (c.alpha * c.alpha * c.alpha);
  ratio = std::clamp(ratio, -1.0, 1.0);
  return shift + 2.0 * c.alpha * std::cos(std::acos(ratio) / 3.0);
}

inline double lambda_max(const TraceTriple& t) { return lambda_max(cubic_coefficients(t), t.tau1); }

namespace detail {

// The first component with magnitude above the noise floor is made positive.
inline Vec3 canonical_sign(Vec3 v) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(v[i]) > 1e-12) return v[i] < 0.0 ? -v : v;
  }
  return v;
}

}  // namespace detail

/// Unit Bloch vector of a pure state minimizing the variance sum: a top
/// eigenvector of the moment matrix.
inline Vec3 optimal_bloch(const MomentMatrix& m) {
  const auto eig = sym3_eigen_jacobi(m.a);
  return detail::canonical_sign(normalized(eig.vectors[0]));
}

inline Vec3 optimal_bloch(const ObservableSet& set) { return optimal_bloch(moment_matrix(set)); }

/// min over qubit states of sum_j Var(n_j . sigma), via the closed-form top eigenvalue.
inline IncompatibilityResult incompatibility(const ObservableSet& set) {
  const MomentMatrix m = moment_matrix(set);
  IncompatibilityResult r;
  r.traces = m.traces;
  r.coefficients = cubic_coefficients(m.a);
  r.lambda_max = lambda_max(r.coefficients, m.traces.tau1);
  r.value = m.traces.tau1 - r.lambda_max;
  r.optimizer = optimal_bloch(m);
  r.method = Method::closed_form;
  return r;
}

/// Same bound with lambda_max taken from Jacobi; independent of the cubic.
inline IncompatibilityResult incompatibility_jacobi(const ObservableSet& set) {
  const MomentMatrix m = moment_matrix(set);
  const auto eig = sym3_eigen_jacobi(m.a);
  IncompatibilityResult r;
  r.traces = m.traces;
  r.coefficients = cubic_coefficients(m.traces);
  r.lambda_max = eig.values[0];
  r.value = m.traces.tau1 - r.lambda_max;
  r.optimizer = detail::canonical_sign(normalized(eig.vectors[0]));
  r.method = Method::jacobi;
  return r;
}

/// Two-spin bound from the 2x2 overlap matrix; lengths need not be equal.
inline double incompatibility_pair(Vec3 n1, Vec3 n2) {
  if (!(n1.norm() > 0.0)) throw InvalidDirection(0, "zero-length direction");
  if (!(n2.norm() > 0.0)) throw InvalidDirection(1, "zero-length direction");
  const double a = n1.norm2();
  const double b = n2.norm2();
  const double c = dot(n1, n2);
  const double top = 0.5 * (a + b + std::sqrt((a - b) * (a - b) + 4.0 * c * c));
  return a + b - top;
}

inline constexpr double kGramRealizabilityTol = 1e-9;

/// Bound for three unit spins given by their pairwise angles:
/// cos(theta1) = n2.n3, cos(theta2) = n1.n3, cos(theta3) = n1.n2.
/// A and the Gram matrix share their nonzero spectrum, so the traces come
/// straight from the cosines.
inline double incompatibility_from_angles(double theta1, double theta2, double theta3) {
  const double c1 = std::cos(theta1);
  const double c2 = std::cos(theta2);
  const double c3 = std::cos(theta3);
  const SymMat3 gram(1.0, 1.0, 1.0, c3, c2, c1);
  const auto eig = sym3_eigen_jacobi(gram);
  if (eig.values[2] < -kGramRealizabilityTol) throw NonRealizableAngles(eig.values[2]);

  const double squares = c1 * c1 + c2 * c2 + c3 * c3;
  const TraceTriple t{3.0, 3.0 + 2.0 * squares, 3.0 + 6.0 * squares + 6.0 * c1 * c2 * c3};
  return 3.0 - lambda_max(t);
}

/// Smallest Gram eigenvalue for an angle triple; negative means not realizable.
inline double gram_min_eigenvalue(double theta1, double theta2, double theta3) {
  const SymMat3 gram(1.0, 1.0, 1.0, std::cos(theta3), std::cos(theta2), std::cos(theta1));
  return sym3_eigen_jacobi(gram).values[2];
}

/// One explicit unit triple with the given pairwise angles: n1 along x,
/// n2 in the xy-plane, n3 completing the Gram matrix.
inline ObservableSet unit_triple_from_angles(double theta1, double theta2, double theta3) {
  const double min_eig = gram_min_eigenvalue(theta1, theta2, theta3);
  if (min_eig < -kGramRealizabilityTol) throw NonRealizableAngles(min_eig);
  const double c1 = std::cos(theta1);
  const double c2 = std::cos(theta2);
  const double c3 = std::cos(theta3);
  const double s3 = std::sin(theta3);
  const Vec3 n1{1.0, 0.0, 0.0};
  const Vec3 n2{c3, s3, 0.0};
  Vec3 n3{c2, 0.0, 0.0};
  if (std::abs(s3) > 1e-12) n3.y = (c1 - c2 * c3) / s3;
  else n3.y = std::sqrt(std::max(0.0, 1.0 - c2 * c2));
  n3.z = std::sqrt(std::max(0.0, 1.0 - n3.x * n3.x - n3.y * n3.y));
  return ObservableSet{n1, n2, n3};
}

}  // namespace qincompat

#endif  // QINCOMPAT_INCOMPATIBILITY_HPP_
