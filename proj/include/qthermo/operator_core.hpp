// Copyright 2026 The qthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex operator algebra. Every operator is a square
// Eigen::MatrixXcd; superoperators act on column-stacked vectorizations,
//
//   vec(X)[i + j*d] = X(i, j),   vec(A X B) = (B^T kron A) vec(X).
//
// All functions are pure; inputs are never modified.

#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace qthermo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance on ||A - A^dagger||_F used to accept Hermitian input.
inline constexpr double kHermitianTolerance = 1e-10;
/// Eigenvalue floor applied before taking logarithms of density matrices.
inline constexpr double kLogClamp = 1e-14;
/// Default bound on ||A||_1 accepted by matrix_exponential.
inline constexpr double kExpNormBound = 1e4;

struct HermitianEigenSystem {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // columns, unitary
};

bool is_hermitian(const ComplexMatrix& a, double rel_tol = kHermitianTolerance);

/// Throws NonHermitianInput unless `a` is square and Hermitian to rel_tol.
void require_hermitian(const ComplexMatrix& a, const char* what,
                       double rel_tol = kHermitianTolerance);

HermitianEigenSystem hermitian_eigendecompose(const ComplexMatrix& a);

/// V diag(f(lambda)) V^dagger. Throws DomainError when f is not finite on
/// the spectrum.
ComplexMatrix matrix_function_hermitian(const ComplexMatrix& a,
                                        const std::function<double(double)>& f);
ComplexMatrix matrix_function_hermitian(const HermitianEigenSystem& eig,
                                        const std::function<double(double)>& f);

struct ClampedLog {
  ComplexMatrix log;
  int clamped = 0;  // eigenvalues raised to the floor
};

/// ln(rho) with eigenvalues below `floor` replaced by `floor`.
ClampedLog log_hermitian_clamped(const ComplexMatrix& rho, double floor = kLogClamp);

/// exp(A). Hermitian input goes through the spectral route, everything else
/// through scaling and squaring with a degree-13 Pade approximant.
/// Throws OverflowError when ||A||_1 > norm_bound.
ComplexMatrix matrix_exponential(const ComplexMatrix& a, double norm_bound = kExpNormBound);

/// Scaling-and-squaring Pade route only, regardless of symmetry.
ComplexMatrix matrix_exponential_pade(const ComplexMatrix& a, double norm_bound = kExpNormBound);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix devec(const ComplexVector& v, Eigen::Index dim);

/// Linear map on d x d matrices stored as a d^2 x d^2 matrix acting on vec().
class Superoperator {
 public:
  Superoperator() = default;
  explicit Superoperator(ComplexMatrix matrix);

  static Superoperator zero(Eigen::Index op_dim);
  static Superoperator identity(Eigen::Index op_dim);

  Eigen::Index op_dim() const { return op_dim_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  ComplexVector apply(const ComplexVector& v) const;
  ComplexMatrix apply(const ComplexMatrix& rho) const;

  Superoperator& operator+=(const Superoperator& other);
  Superoperator& operator-=(const Superoperator& other);
  Superoperator& operator*=(Complex s);

  friend Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
  friend Superoperator operator-(Superoperator a, const Superoperator& b) { return a -= b; }
  friend Superoperator operator*(Complex s, Superoperator a) { return a *= s; }
  /// Composition: (a * b)(X) = a(b(X)).
  friend Superoperator operator*(const Superoperator& a, const Superoperator& b);

 private:
  ComplexMatrix matrix_;
  Eigen::Index op_dim_ = 0;
};

/// X -> A X, i.e. I kron A.
Superoperator left_mult_superop(const ComplexMatrix& a);
/// X -> X B, i.e. B^T kron I.
Superoperator right_mult_superop(const ComplexMatrix& b);
/// X -> A X B, i.e. B^T kron A.
Superoperator sandwich_superop(const ComplexMatrix& a, const ComplexMatrix& b);
/// X -> [A, X].
Superoperator commutator_superop(const ComplexMatrix& a);
/// X -> {A, X}.
Superoperator anticommutator_superop(const ComplexMatrix& a);

/// exp(L t) for a generator L.
Superoperator exponentiate(const Superoperator& generator, double t);

/// Trace of A B without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qthermo
