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

// Generators d vec(rho)/dt = L vec(rho) for the damped oscillator models,
// the quantum optical master equation, and complete-positivity diagnostics.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qthermo/friction.hpp"
#include "qthermo/operator_core.hpp"
#include "qthermo/oscillator.hpp"

namespace qthermo {

enum class ModelKind {
  Unitary,
  FullHermitian,
  FullNonHermitian,
  MomentumOnlyHermitian,
  MomentumOnlyNonHermitian,
  CaldeiraLeggett,
  Qome,
};

std::string to_string(ModelKind kind);
/// Accepts the CamelCase names and their kebab-case forms
/// ("full-hermitian", "caldeira-leggett", "qome", ...).
std::optional<ModelKind> parse_model_kind(std::string_view text);

bool is_dissipative(ModelKind kind);
bool is_nonhermitian(ModelKind kind);
bool is_momentum_only(ModelKind kind);

struct BathParams {
  double kt = 1.0;
  double beta_p = 0.0;
  double beta_q = 0.0;
  double force = 0.0;
};

/// Generator for an arbitrary one-dof spectrum. QOME is not accepted here.
///
///   L rho = (1/i hbar)[H, rho] - (f/i hbar)[q, rho]
///         - (kT beta_p m/hbar^2)[q,[q,rho]] + (beta_p/2 i hbar)[q, F_p(rho)]
///         - (kT beta_q m/hbar^2)[p,[p,rho]] - (beta_q/2 i hbar)[p, F_q(rho)]
///
/// with F(rho) = Theta rho + rho Theta for Hermitian kinds and
/// Xi^dagger rho + rho Xi for non-Hermitian ones.
Superoperator build_generator(const SpectralSystem& sys, const BathParams& bath, ModelKind kind);

/// Generator for the oscillator. MomentumOnly kinds and CaldeiraLeggett
/// ignore beta_q; Qome uses qome_mapping(model).
Superoperator build_liouvillian(const OscillatorModel& model, ModelKind kind);

struct QomeParams {
  double gamma0 = 0.0;
  double nbar = 0.0;
};

/// Requires beta_p == m^2 w^2 beta_q to 1e-12 relative; throws OffBisector.
QomeParams qome_mapping(const OscillatorModel& model);

///   L rho = -i w [a^dagger a, rho] - (f/i hbar)[q, rho]
///         + (g0/2)(nbar+1)(2 a rho a^dagger - a^dagger a rho - rho a^dagger a)
///         + (g0/2) nbar (2 a^dagger rho a - a a^dagger rho - rho a a^dagger)
Superoperator build_qome(const OscillatorModel& model, const QomeParams& params);

struct LindbladReport {
  double d_pp = 0.0;
  double d_qq = 0.0;
  double d_pq = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double xi = 0.0;
  double x = 0.0;  // beta_p / (m^2 w^2 beta_q)
  double x1 = 0.0;
  double x2 = 0.0;
  bool cond1 = false;  // D_pp > 0
  bool cond2 = false;  // D_qq > 0
  bool cond3 = false;  // D_pp D_qq - D_pq^2 >= lambda^2 hbar^2 / 4
  double choi_min_eigenvalue = 0.0;
};

/// Analytic Lindblad-form coefficients of the oscillator generator. The
/// Choi eigenvalue is filled only when `choi_dt` is set.
LindbladReport lindblad_region_check(const OscillatorModel& model, bool nonhermitian,
                                     std::optional<double> choi_dt = std::nullopt);

/// Interval endpoints ((cosh xi -+ 1)/sinh xi)^2.
double lindblad_x1(double xi);
double lindblad_x2(double xi);

/// Choi matrix of exp(L dt): block (i, j) is the image of the matrix unit
/// E_ij, i.e. C = sum_ij E_ij kron Phi(E_ij).
ComplexMatrix choi_matrix(const Superoperator& step_map);

inline constexpr double kDefaultChoiStep = 3.14159265358979323846 / 200.0;

double choi_min_eigenvalue(const Superoperator& generator, double dt = kDefaultChoiStep);

}  // namespace qthermo
