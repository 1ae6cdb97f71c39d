// Copyright 2026 The qincompat Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QINCOMPAT_LINALG_HPP_
#define QINCOMPAT_LINALG_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qincompat {

using complex_t = std::complex<double>;

/// Raised when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  constexpr double norm2() const { return x * x + y * y + z * z; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return s * a; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Vec3 normalized(Vec3 v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw ValidationError("cannot normalize a zero vector");
  return (1.0 / n) * v;
}

/// Real symmetric 3x3 matrix; each off-diagonal entry is stored once.
class SymMat3 {
 public:
  constexpr SymMat3() = default;
  constexpr SymMat3(double a00, double a11, double a22, double a01, double a02, double a12)
      : d_{a00, a11, a22}, o_{a01, a02, a12} {}

  static constexpr SymMat3 identity() { return {1, 1, 1, 0, 0, 0}; }
  static constexpr SymMat3 diagonal(double a, double b, double c) { return {a, b, c, 0, 0, 0}; }
  static constexpr SymMat3 outer(Vec3 n) {
    return {n.x * n.x, n.y * n.y, n.z * n.z, n.x * n.y, n.x * n.z, n.y * n.z};
  }

  constexpr double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return d_[i];
    return o_[offdiag_slot(i, j)];
  }
  constexpr void set(std::size_t i, std::size_t j, double v) {
    if (i == j)
      d_[i] = v;
    else
      o_[offdiag_slot(i, j)] = v;
  }

  constexpr SymMat3& operator+=(const SymMat3& b) {
    for (std::size_t k = 0; k < 3; ++k) {
      d_[k] += b.d_[k];
      o_[k] += b.o_[k];
    }
    return *this;
  }
  friend constexpr SymMat3 operator+(SymMat3 a, const SymMat3& b) { return a += b; }
  friend constexpr SymMat3 operator*(double s, SymMat3 a) {
    for (std::size_t k = 0; k < 3; ++k) {
      a.d_[k] *= s;
      a.o_[k] *= s;
    }
    return a;
  }

  constexpr Vec3 apply(Vec3 v) const {
    Vec3 r;
    for (std::size_t i = 0; i < 3; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < 3; ++j) s += (*this)(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

  bool finite() const {
    return std::all_of(d_.begin(), d_.end(), [](double v) { return std::isfinite(v); }) &&
           std::all_of(o_.begin(), o_.end(), [](double v) { return std::isfinite(v); });
  }

  double frobenius() const {
    double s = 0.0;
    for (std::size_t k = 0; k < 3; ++k) s += d_[k] * d_[k] + 2.0 * o_[k] * o_[k];
    return std::sqrt(s);
  }

  /// Cofactor expansion along the first row.
  constexpr double determinant() const {
    const auto& a = *this;
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(1, 2)) -
           a(0, 1) * (a(0, 1) * a(2, 2) - a(1, 2) * a(0, 2)) +
           a(0, 2) * (a(0, 1) * a(1, 2) - a(1, 1) * a(0, 2));
  }

 private:
  static constexpr std::size_t offdiag_slot(std::size_t i, std::size_t j) {
    // (0,1) -> 0, (0,2) -> 1, (1,2) -> 2
    return i + j - 1;
  }

  std::array<double, 3> d_{};
  std::array<double, 3> o_{};
};

/// tau_k = tr(A^k), k = 1, 2, 3.
struct TraceTriple {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;
};

/// Trace powers from the matrix entries directly; no eigen-decomposition.
constexpr TraceTriple sym3_traces(const SymMat3& a) {
  TraceTriple t;
  t.tau1 = a(0, 0) + a(1, 1) + a(2, 2);
  // tr(A^2) = sum_ij a_ij^2 for symmetric A.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t.tau2 += a(i, j) * a(i, j);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) t.tau3 += a(i, j) * a(j, k) * a(k, i);
  return t;
}

/// Newton's identity for the third elementary symmetric polynomial.
constexpr double det_from_traces(const TraceTriple& t) {
  return (t.tau1 * t.tau1 * t.tau1 + 2.0 * t.tau3 - 3.0 * t.tau1 * t.tau2) / 6.0;
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi for small dense real symmetric matrices.

template <std::size_t N>
using RealSquare = std::array<std::array<double, N>, N>;

template <std::size_t N>
struct SymmetricEigen {
  std::array<double, N> values{};  // descending
  RealSquare<N> vectors{};         // vectors[k] is the k-th eigenvector
  int sweeps = 0;
};

namespace detail {

inline constexpr int kJacobiMaxSweeps = 50;
inline constexpr double kJacobiRelTol = 1e-14;

template <std::size_t N>
double offdiag_frobenius(const RealSquare<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += a[i][j] * a[i][j];
  return std::sqrt(s);
}

}  // namespace detail

/// Eigen-decomposition of a real symmetric N x N matrix by cyclic Jacobi
/// rotations. Eigenvalues are returned in descending order; ties keep the
/// diagonal position in which they converged.
template <std::size_t N>
SymmetricEigen<N> jacobi_eigen(RealSquare<N> a) {
  double fro = 0.0;
  for (const auto& row : a)
    for (double v : row) {
      if (!std::isfinite(v)) throw ValidationError("Jacobi eigen-solver: non-finite matrix entry");
      fro += v * v;
    }
  fro = std::sqrt(fro);
  const double threshold = detail::kJacobiRelTol * (1.0 + fro);

  RealSquare<N> v{};
  for (std::size_t i = 0; i < N; ++i) v[i][i] = 1.0;

  int sweep = 0;
  for (; sweep < detail::kJacobiMaxSweeps; ++sweep) {
    if (detail::offdiag_frobenius(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        a[p][q] = a[q][p] = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i][i] > a[j][j]; });

  SymmetricEigen<N> out;
  out.sweeps = sweep;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a[order[k]][order[k]];
    for (std::size_t i = 0; i < N; ++i) out.vectors[k][i] = v[i][order[k]];
  }
  return out;
}

struct Sym3Eigen {
  std::array<double, 3> values{};  // descending
  std::array<Vec3, 3> vectors{};   // orthonormal
};

inline Sym3Eigen sym3_eigen_jacobi(const SymMat3& a) {
  if (!a.finite()) throw ValidationError("sym3_eigen_jacobi: non-finite matrix entry");
  RealSquare<3> m{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = a(i, j);
  const auto e = jacobi_eigen<3>(m);
  Sym3Eigen out;
  for (std::size_t k = 0; k < 3; ++k) {
    out.values[k] = e.values[k];
    out.vectors[k] = {e.vectors[k][0], e.vectors[k][1], e.vectors[k][2]};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dense complex Hermitian matrices of fixed dimension.

template <std::size_t D>
class HermMat {
  static_assert(D == 2 || D == 4, "HermMat supports qubit (2) and two-qubit (4) dimensions");

 public:
  static constexpr std::size_t dim = D;
  using Plane = std::array<double, D * D>;

  HermMat() = default;
  HermMat(const Plane& re, const Plane& im) : re_(re), im_(im) {}

  static HermMat identity() {
    HermMat m;
    for (std::size_t i = 0; i < D; ++i) m.re_[i * D + i] = 1.0;
    return m;
  }

  complex_t operator()(std::size_t i, std::size_t j) const { return {re_[i * D + j], im_[i * D + j]}; }
  void set(std::size_t i, std::size_t j, complex_t v) {
    re_[i * D + j] = v.real();
    im_[i * D + j] = v.imag();
  }

  const Plane& re() const { return re_; }
  const Plane& im() const { return im_; }

  HermMat& operator+=(const HermMat& b) {
    for (std::size_t k = 0; k < D * D; ++k) {
      re_[k] += b.re_[k];
      im_[k] += b.im_[k];
    }
    return *this;
  }
  friend HermMat operator+(HermMat a, const HermMat& b) { return a += b; }
  friend HermMat operator*(double s, HermMat a) {
    for (std::size_t k = 0; k < D * D; ++k) {
      a.re_[k] *= s;
      a.im_[k] *= s;
    }
    return a;
  }

  /// Largest |M(i,j) - conj(M(j,i))|.
  double hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = i; j < D; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
  }

  bool finite() const {
    for (std::size_t k = 0; k < D * D; ++k)
      if (!std::isfinite(re_[k]) || !std::isfinite(im_[k])) return false;
    return true;
  }

  complex_t trace() const {
    complex_t t = 0.0;
    for (std::size_t i = 0; i < D; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  Plane re_{};
  Plane im_{};
};

/// General complex product; the result need not be Hermitian, so it is
/// returned as a raw row-major array.
template <std::size_t D>
std::array<complex_t, D * D> matmul(const HermMat<D>& a, const HermMat<D>& b) {
  std::array<complex_t, D * D> c{};
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t k = 0; k < D; ++k) {
      const complex_t aik = a(i, k);
      for (std::size_t j = 0; j < D; ++j) c[i * D + j] += aik * b(k, j);
    }
  return c;
}

/// tr(A B) without forming the product.
template <std::size_t D>
complex_t trace_product(const HermMat<D>& a, const HermMat<D>& b) {
  complex_t t = 0.0;
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t k = 0; k < D; ++k) t += a(i, k) * b(k, i);
  return t;
}

/// Kronecker product, composite index 2*i_A + i_B.
inline HermMat<4> tensor_product(const HermMat<2>& p, const HermMat<2>& q) {
  HermMat<4> out;
  for (std::size_t ia = 0; ia < 2; ++ia)
    for (std::size_t ja = 0; ja < 2; ++ja)
      for (std::size_t ib = 0; ib < 2; ++ib)
        for (std::size_t jb = 0; jb < 2; ++jb) out.set(2 * ia + ib, 2 * ja + jb, p(ia, ja) * q(ib, jb));
  return out;
}

/// Eigenvalues (descending) of a Hermitian matrix via the real embedding
/// [[Re, -Im], [Im, Re]], whose spectrum is that of M with each value doubled.
template <std::size_t D>
std::array<double, D> hermitian_eigenvalues(const HermMat<D>& m) {
  RealSquare<2 * D> emb{};
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) {
      // Symmetrize so tiny Hermiticity defects do not leak into the solver.
      const complex_t v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      emb[i][j] = v.real();
      emb[i + D][j + D] = v.real();
      emb[i][j + D] = -v.imag();
      emb[i + D][j] = v.imag();
    }
  const auto e = jacobi_eigen<2 * D>(emb);
  std::array<double, D> out{};
  for (std::size_t k = 0; k < D; ++k) out[k] = 0.5 * (e.values[2 * k] + e.values[2 * k + 1]);
  return out;
}

inline constexpr double kDefaultPsdTol = 1e-9;

/// True iff every eigenvalue is >= -tol. Throws ValidationError when the
/// matrix is not Hermitian within tol, which is a different failure from
/// "Hermitian but indefinite".
template <std::size_t D>
bool hermitian_psd_check(const HermMat<D>& m, double tol = kDefaultPsdTol) {
  if (!m.finite()) throw ValidationError("matrix has non-finite entries");
  const double defect = m.hermiticity_defect();
  if (defect > tol)
    throw ValidationError("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  const auto ev = hermitian_eigenvalues(m);
  return ev[D - 1] >= -tol;
}

}  // namespace qincompat

#endif  // QINCOMPAT_LINALG_HPP_
