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

#include "qthermo/friction.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

constexpr double kSeriesCutoff = 1e-6;
constexpr double kMaxKernelArgument = 700.0;

void check_inputs(const RealVector& energies, const ComplexMatrix& base, double kt,
                  const char* what) {
  if (base.rows() != energies.size() || base.cols() != energies.size()) {
    throw DimensionMismatch(std::string(what) + ": base does not match the spectrum");
  }
  if (!energies.allFinite()) throw DomainError(std::string(what) + ": non-finite energy");
  if (!(kt > 0.0)) throw DomainError(std::string(what) + ": kT must be positive");
}

// C for the stationarity equation, with G shifted by the ground energy.
ComplexMatrix stationarity_rhs(const SpectralSystem& sys, double kt, FrictionChannel channel,
                               const ComplexMatrix& g) {
  const Complex scale(0.0, 2.0 * sys.mass * kt / sys.hbar);
  if (channel == FrictionChannel::Momentum) return scale * commutator(sys.position, g);
  return -scale * commutator(sys.momentum, g);
}

ComplexMatrix shifted_boltzmann(const SpectralSystem& sys, double kt, double sign) {
  const double e0 = sys.energies(0);
  RealVector w(sys.dim());
  for (Eigen::Index n = 0; n < sys.dim(); ++n) w(n) = std::exp(sign * (sys.energies(n) - e0) / kt);
  return w.cast<Complex>().asDiagonal();
}

}  // namespace

ComplexMatrix SpectralSystem::base(FrictionChannel channel) const {
  if (channel == FrictionChannel::Momentum) return momentum;
  return mass * potential_gradient;
}

SpectralSystem oscillator_system(const OscillatorModel& model) {
  SpectralSystem sys;
  sys.energies = energies(model);
  sys.position = position_matrix(model);
  sys.momentum = momentum_matrix(model);
  sys.potential_gradient = model.mass * model.omega * model.omega * sys.position;
  sys.mass = model.mass;
  sys.hbar = model.hbar;
  return sys;
}

double tanhc(double x) {
  if (std::abs(x) < kSeriesCutoff) {
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0;
  }
  return std::tanh(x) / x;
}

double sinhc(double x) {
  if (std::abs(x) < kSeriesCutoff) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

ComplexMatrix spectral_friction_hermitian(const RealVector& energies, const ComplexMatrix& base,
                                          double kt) {
  check_inputs(energies, base, kt, "spectral_friction_hermitian");
  require_hermitian(base, "spectral_friction_hermitian");
  const Eigen::Index d = energies.size();
  ComplexMatrix theta(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index l = 0; l < d; ++l) {
      theta(l, j) = base(l, j) * tanhc((energies(l) - energies(j)) / (2.0 * kt));
    }
  }
  return 0.5 * (theta + theta.adjoint());
}

ComplexMatrix sylvester_solve(const ComplexMatrix& a, const ComplexMatrix& c) {
  if (c.rows() != a.rows() || c.cols() != a.cols()) {
    throw DimensionMismatch("sylvester_solve: operand dimensions differ");
  }
  if (!c.allFinite()) throw DomainError("sylvester_solve: non-finite right-hand side");
  const HermitianEigenSystem eig = hermitian_eigendecompose(a);
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix x = v.adjoint() * c * v;
  const Eigen::Index d = a.rows();
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double denom = eig.eigenvalues(i) + eig.eigenvalues(j);
      if (!(denom >= 1e-300)) {
        throw SingularPairing("sylvester_solve: a_i + a_j = " + std::to_string(denom) +
                              " at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      x(i, j) /= denom;
    }
  }
  return v * x * v.adjoint();
}

ComplexMatrix bernoulli_series_friction(const RealVector& energies, const ComplexMatrix& base,
                                        double kt, int order) {
  check_inputs(energies, base, kt, "bernoulli_series_friction");
  if (order < 0 || order > kMaxBernoulliOrder) {
    throw DomainError("bernoulli_series_friction: order must be in [0, 8]");
  }
  // B_2, B_4, ..., B_18.
  static constexpr std::array<double, kMaxBernoulliOrder + 1> bernoulli = {
      1.0 / 6.0,       -1.0 / 30.0,     1.0 / 42.0,      -1.0 / 30.0,   5.0 / 66.0,
      -691.0 / 2730.0, 7.0 / 6.0,       -3617.0 / 510.0, 43867.0 / 798.0};

  const ComplexMatrix h = energies.cast<Complex>().asDiagonal();
  ComplexMatrix nested = base;
  ComplexMatrix sum = ComplexMatrix::Zero(base.rows(), base.cols());
  double factorial = 2.0;  // (2n+2)!
  double kt_power = 1.0;   // kT^{-2n}
  for (int n = 0; n <= order; ++n) {
    const double k = 2.0 * n + 2.0;
    const double coeff = 4.0 * (std::ldexp(1.0, 2 * n + 2) - 1.0) / factorial * bernoulli[n];
    sum += (coeff * kt_power) * nested;
    nested = commutator(h, commutator(h, nested));
    factorial *= (k + 1.0) * (k + 2.0);
    kt_power /= kt * kt;
  }
  return 0.5 * (sum + sum.adjoint());
}

ComplexMatrix hermitian_friction(const SpectralSystem& sys, double kt, FrictionChannel channel) {
  return spectral_friction_hermitian(sys.energies, sys.base(channel), kt);
}

ComplexMatrix hermitian_friction_sylvester(const SpectralSystem& sys, double kt,
                                           FrictionChannel channel) {
  // The equation is homogeneous in G, so the ground-energy shift drops out.
  const ComplexMatrix g = shifted_boltzmann(sys, kt, -1.0);
  const ComplexMatrix x = sylvester_solve(g, stationarity_rhs(sys, kt, channel, g));
  return 0.5 * (x + x.adjoint());
}

ComplexMatrix hermitian_friction_bernoulli(const SpectralSystem& sys, double kt,
                                           FrictionChannel channel, int order) {
  return bernoulli_series_friction(sys.energies, sys.base(channel), kt, order);
}

ComplexMatrix nonhermitian_friction(const SpectralSystem& sys, double kt, FrictionChannel channel) {
  const ComplexMatrix base = sys.base(channel);
  check_inputs(sys.energies, base, kt, "nonhermitian_friction");
  require_hermitian(base, "nonhermitian_friction");
  const Eigen::Index d = sys.dim();
  const double emin = sys.energies.minCoeff();
  const double emax = sys.energies.maxCoeff();
  if ((emax - emin) / kt > kMaxKernelArgument) {
    throw OverflowError("nonhermitian_friction: (E_max - E_min)/kT exceeds 700");
  }
  const double scale = sys.mass * kt / sys.hbar;
  const ComplexMatrix partner =
      channel == FrictionChannel::Momentum ? ComplexMatrix(scale * sys.position)
                                           : ComplexMatrix(-scale * sys.momentum);
  const Complex i(0.0, 1.0);
  ComplexMatrix xi(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index l = 0; l < d; ++l) {
      const double x = (sys.energies(l) - sys.energies(j)) / kt;
      xi(l, j) = base(l, j) * sinhc(x) + i * partner(l, j) * (std::cosh(x) - 1.0);
    }
  }
  return xi;
}

ComplexMatrix nonhermitian_friction_closed_form(const SpectralSystem& sys, double kt,
                                                FrictionChannel channel) {
  if (!(kt > 0.0)) throw DomainError("nonhermitian_friction_closed_form: kT must be positive");
  if ((sys.energies.maxCoeff() - sys.energies.minCoeff()) / kt > kMaxKernelArgument) {
    throw OverflowError("nonhermitian_friction_closed_form: (E_max - E_min)/kT exceeds 700");
  }
  const ComplexMatrix up = shifted_boltzmann(sys, kt, 1.0);
  const ComplexMatrix down = shifted_boltzmann(sys, kt, -1.0);
  const Complex scale(0.0, sys.mass * kt / sys.hbar);
  if (channel == FrictionChannel::Momentum) {
    return scale * (up * sys.position * down - sys.position);
  }
  return -scale * (up * sys.momentum * down - sys.momentum);
}

double stationarity_residual_hermitian(const SpectralSystem& sys, double kt,
                                       FrictionChannel channel, const ComplexMatrix& theta) {
  const ComplexMatrix g = shifted_boltzmann(sys, kt, -1.0);
  return (stationarity_rhs(sys, kt, channel, g) - (theta * g + g * theta)).norm();
}

double stationarity_residual_nonhermitian(const SpectralSystem& sys, double kt,
                                          FrictionChannel channel, const ComplexMatrix& xi) {
  const ComplexMatrix g = shifted_boltzmann(sys, kt, -1.0);
  return (stationarity_rhs(sys, kt, channel, g) - (xi.adjoint() * g + g * xi)).norm();
}

}  // namespace qthermo
