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

#include "qthermo/operator_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionMismatch(std::string(what) + ": expected a non-empty square matrix, got " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_same_dims(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": operand dimensions differ");
  }
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!a.allFinite()) throw DomainError(std::string(what) + ": non-finite entry");
}

// Route selection for matrix_exponential only; much tighter than the
// input-acceptance tolerance.
constexpr double kExactHermitianTolerance = 1e-13;

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

}  // namespace

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double norm = a.norm();
  return (a - a.adjoint()).norm() <= rel_tol * std::max(1.0, norm);
}

void require_hermitian(const ComplexMatrix& a, const char* what, double rel_tol) {
  require_square(a, what);
  if (!is_hermitian(a, rel_tol)) {
    throw NonHermitianInput(std::string(what) + ": matrix is not Hermitian (||A - A^H||_F = " +
                            std::to_string((a - a.adjoint()).norm()) + ")");
  }
}

HermitianEigenSystem hermitian_eigendecompose(const ComplexMatrix& a) {
  require_hermitian(a, "hermitian_eigendecompose");
  require_finite(a, "hermitian_eigendecompose");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("hermitian_eigendecompose: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix matrix_function_hermitian(const HermitianEigenSystem& eig,
                                        const std::function<double(double)>& f) {
  const Eigen::Index n = eig.eigenvalues.size();
  RealVector fvals(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    fvals(i) = f(eig.eigenvalues(i));
    if (!std::isfinite(fvals(i))) {
      throw DomainError("matrix_function_hermitian: f is not finite at eigenvalue " +
                        std::to_string(eig.eigenvalues(i)));
    }
  }
  ComplexMatrix out = eig.eigenvectors * fvals.asDiagonal() * eig.eigenvectors.adjoint();
  return hermitian_part(out);
}

ComplexMatrix matrix_function_hermitian(const ComplexMatrix& a,
                                        const std::function<double(double)>& f) {
  return matrix_function_hermitian(hermitian_eigendecompose(a), f);
}

ClampedLog log_hermitian_clamped(const ComplexMatrix& rho, double floor) {
  const HermitianEigenSystem eig = hermitian_eigendecompose(rho);
  ClampedLog out;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) < floor) ++out.clamped;
  }
  out.log = matrix_function_hermitian(eig, [floor](double x) { return std::log(std::max(x, floor)); });
  return out;
}

ComplexMatrix matrix_exponential_pade(const ComplexMatrix& a, double norm_bound) {
  require_square(a, "matrix_exponential");
  require_finite(a, "matrix_exponential");
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 > norm_bound) {
    throw OverflowError("matrix_exponential: ||A||_1 = " + std::to_string(norm1) +
                        " exceeds bound " + std::to_string(norm_bound));
  }

  // Degree-13 Pade coefficients and theta_13 (Higham 2005).
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const ComplexMatrix as = a / std::ldexp(1.0, squarings);

  const Eigen::Index n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = as * as;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;

  const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                                b[5] * a4 + b[3] * a2 + b[1] * id;
  const ComplexMatrix u = as * u_inner;
  const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                          b[2] * a2 + b[0] * id;

  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = (r * r).eval();
  if (!r.allFinite()) throw OverflowError("matrix_exponential: result overflowed");
  return r;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& a, double norm_bound) {
  require_square(a, "matrix_exponential");
  if (a.allFinite() && is_hermitian(a, kExactHermitianTolerance)) {
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    if (norm1 > norm_bound) {
      throw OverflowError("matrix_exponential: ||A||_1 exceeds bound");
    }
    return matrix_function_hermitian(a, [](double x) { return std::exp(x); });
  }
  return matrix_exponential_pade(a, norm_bound);
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dims(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dims(a, b, "anticommutator");
  return a * b + b * a;
}

ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix devec(const ComplexVector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw DimensionMismatch("devec: vector length is not dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

// --- Superoperator ---------------------------------------------------------

Superoperator::Superoperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw DimensionMismatch("Superoperator: not square");
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(matrix_.rows()))));
  if (d * d != matrix_.rows()) {
    throw DimensionMismatch("Superoperator: size is not a perfect square");
  }
  op_dim_ = d;
}

Superoperator Superoperator::zero(Eigen::Index op_dim) {
  return Superoperator(ComplexMatrix::Zero(op_dim * op_dim, op_dim * op_dim));
}

Superoperator Superoperator::identity(Eigen::Index op_dim) {
  return Superoperator(ComplexMatrix::Identity(op_dim * op_dim, op_dim * op_dim));
}

ComplexVector Superoperator::apply(const ComplexVector& v) const {
  if (v.size() != matrix_.cols()) throw DimensionMismatch("Superoperator::apply: bad length");
  return matrix_ * v;
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != op_dim_ || rho.cols() != op_dim_) {
    throw DimensionMismatch("Superoperator::apply: operator dimension mismatch");
  }
  return devec(matrix_ * vec(rho), op_dim_);
}

Superoperator& Superoperator::operator+=(const Superoperator& other) {
  if (other.op_dim_ != op_dim_) throw DimensionMismatch("Superoperator +=: dimension mismatch");
  matrix_ += other.matrix_;
  return *this;
}

Superoperator& Superoperator::operator-=(const Superoperator& other) {
  if (other.op_dim_ != op_dim_) throw DimensionMismatch("Superoperator -=: dimension mismatch");
  matrix_ -= other.matrix_;
  return *this;
}

Superoperator& Superoperator::operator*=(Complex s) {
  matrix_ *= s;
  return *this;
}

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  if (a.op_dim_ != b.op_dim_) throw DimensionMismatch("Superoperator *: dimension mismatch");
  return Superoperator(a.matrix_ * b.matrix_);
}

Superoperator left_mult_superop(const ComplexMatrix& a) {
  require_square(a, "left_mult_superop");
  const Eigen::Index d = a.rows();
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j) m.block(j * d, j * d, d, d) = a;
  return Superoperator(std::move(m));
}

Superoperator right_mult_superop(const ComplexMatrix& b) {
  require_square(b, "right_mult_superop");
  const Eigen::Index d = b.rows();
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index l = 0; l < d; ++l) {
      const Complex blj = b(l, j);
      if (blj == Complex(0.0)) continue;
      for (Eigen::Index i = 0; i < d; ++i) m(i + j * d, i + l * d) = blj;
    }
  }
  return Superoperator(std::move(m));
}

Superoperator sandwich_superop(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "sandwich_superop");
  require_same_dims(a, b, "sandwich_superop");
  const Eigen::Index d = a.rows();
  ComplexMatrix m(d * d, d * d);
  for (Eigen::Index l = 0; l < d; ++l) {
    for (Eigen::Index j = 0; j < d; ++j) m.block(j * d, l * d, d, d) = b(l, j) * a;
  }
  return Superoperator(std::move(m));
}

Superoperator commutator_superop(const ComplexMatrix& a) {
  return left_mult_superop(a) - right_mult_superop(a);
}

Superoperator anticommutator_superop(const ComplexMatrix& a) {
  return left_mult_superop(a) + right_mult_superop(a);
}

Superoperator exponentiate(const Superoperator& generator, double t) {
  return Superoperator(matrix_exponential_pade(generator.matrix() * t));
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dims(a, b.transpose(), "trace_product");
  return a.cwiseProduct(b.transpose()).sum();
}

}  // namespace qthermo
