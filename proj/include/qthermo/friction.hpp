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

// Friction operators that make the Gibbs state stationary. Every input is
// expressed in the energy eigenbasis of a non-degenerate Hamiltonian.
//
// Hermitian operators (Theta) come from three independent routes: the
// spectral tanh(x)/x kernel, the Sylvester equation G X + X G = C with
// G = exp(-H/kT), and a truncated Bernoulli series in 1/kT. Non-Hermitian
// operators (Xi) come from the sinh/cosh kernel or the closed form
// exp(H/kT) B exp(-H/kT).

#pragma once

#include "qthermo/operator_core.hpp"
#include "qthermo/oscillator.hpp"

namespace qthermo {

enum class FrictionChannel {
  Momentum,  // base operator p
  Position,  // base operator m dV/dq
};

/// One-dof system in its energy basis.
struct SpectralSystem {
  RealVector energies;               // ascending, non-degenerate
  ComplexMatrix position;            // q
  ComplexMatrix momentum;            // p
  ComplexMatrix potential_gradient;  // dV/dq
  double mass = 1.0;
  double hbar = 1.0;

  Eigen::Index dim() const { return energies.size(); }
  ComplexMatrix hamiltonian() const { return energies.cast<Complex>().asDiagonal(); }
  /// p for Momentum, m dV/dq for Position.
  ComplexMatrix base(FrictionChannel channel) const;
};

SpectralSystem oscillator_system(const OscillatorModel& model);

/// Theta_lj = base_lj * tanh(x)/x, x = (E_l - E_j)/(2 kT).
ComplexMatrix spectral_friction_hermitian(const RealVector& energies, const ComplexMatrix& base,
                                          double kt);

/// Solves A X + X A = C for Hermitian positive-definite A.
ComplexMatrix sylvester_solve(const ComplexMatrix& a, const ComplexMatrix& c);

inline constexpr int kMaxBernoulliOrder = 8;

/// Partial sum of 4 sum_n (2^{2n+2}-1)/(2n+2)! B_{2n+2} kT^{-2n} [H, base]_{2n}
/// for n = 0..order. Asymptotic; intended as a small-xi diagnostic.
ComplexMatrix bernoulli_series_friction(const RealVector& energies, const ComplexMatrix& base,
                                        double kt, int order);

/// Theta by the spectral kernel.
ComplexMatrix hermitian_friction(const SpectralSystem& sys, double kt, FrictionChannel channel);
/// Theta by solving the stationarity equation directly.
ComplexMatrix hermitian_friction_sylvester(const SpectralSystem& sys, double kt,
                                           FrictionChannel channel);
ComplexMatrix hermitian_friction_bernoulli(const SpectralSystem& sys, double kt,
                                           FrictionChannel channel, int order = kMaxBernoulliOrder);

/// Xi_lj = base_lj sinh(x)/x + i B_lj (cosh(x) - 1), x = (E_l - E_j)/kT, with
/// B = (m kT/hbar) q for Momentum and B = -(m kT/hbar) p for Position.
ComplexMatrix nonhermitian_friction(const SpectralSystem& sys, double kt, FrictionChannel channel);
/// Xi^p = (i m kT/hbar)(e^{H/kT} q e^{-H/kT} - q),
/// Xi^q = -(i m kT/hbar)(e^{H/kT} p e^{-H/kT} - p).
ComplexMatrix nonhermitian_friction_closed_form(const SpectralSystem& sys, double kt,
                                                FrictionChannel channel);

/// ||C - (Theta G + G Theta)||_F with G = exp(-(H - E_0)/kT) and
/// C = (2 i m kT/hbar)[q, G] (Momentum) or -(2 i m kT/hbar)[p, G] (Position).
double stationarity_residual_hermitian(const SpectralSystem& sys, double kt,
                                       FrictionChannel channel, const ComplexMatrix& theta);
/// Same with Xi^dagger G + G Xi on the right-hand side.
double stationarity_residual_nonhermitian(const SpectralSystem& sys, double kt,
                                          FrictionChannel channel, const ComplexMatrix& xi);

/// tanh(x)/x with its series near zero.
double tanhc(double x);
/// sinh(x)/x with its series near zero.
double sinhc(double x);

}  // namespace qthermo
