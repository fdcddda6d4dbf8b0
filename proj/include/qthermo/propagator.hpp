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

// Fixed-step propagation rho_{n+1} = exp(L dt) rho_n and spectral probes.

#pragma once

#include <variant>
#include <vector>

#include "qthermo/operator_core.hpp"

namespace qthermo {

/// rho_kk = N / k^f for k = 1..d, off-diagonals zero.
struct MixedPowerLaw {
  double f = 1.0;
};
/// rho_ss = 1 with s counted from 1 (s = 1 is the ground level).
struct PureLevel {
  int s = 1;
};
struct GibbsInitial {};
struct CustomInitial {
  ComplexMatrix rho;
};

using InitialCondition = std::variant<MixedPowerLaw, PureLevel, GibbsInitial, CustomInitial>;

/// Density matrix for `ic`; `gibbs` is used for GibbsInitial only.
/// Throws DomainError for invalid parameters or a non-density Custom matrix.
ComplexMatrix initial_density(const InitialCondition& ic, int dim, const ComplexMatrix& gibbs = {});

inline constexpr double kTraceDriftLimit = 1e-6;
/// Per-step Hermitian projection larger than this is reported as a warning.
inline constexpr double kHermitianCorrectionLimit = 1e-11;

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;  // states[0] = rho0
  Superoperator step_map;             // exp(L dt)
  double max_hermitian_correction = 0.0;
  double max_trace_error = 0.0;
};

/// Computes exp(L dt) once and applies it `steps` times, projecting onto the
/// Hermitian part after each step. Throws TraceDrift if |Tr rho - 1| > 1e-6.
Trajectory evolve(const Superoperator& generator, const ComplexMatrix& rho0, double dt, int steps);

struct SpectralProbe {
  double min_eig = 0.0;
  int neg_count = 0;
  double purity = 0.0;
};

inline constexpr double kNegativeEigenvalueThreshold = -1e-10;

SpectralProbe spectral_probe(const ComplexMatrix& rho,
                             double neg_threshold = kNegativeEigenvalueThreshold);

}  // namespace qthermo
