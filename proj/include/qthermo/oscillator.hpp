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

// Truncated Fock-basis representation of the one-dimensional harmonic
// oscillator. Level n runs from 0 to dim-1.

#pragma once

#include "qthermo/operator_core.hpp"

namespace qthermo {

struct OscillatorModel {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double kb = 1.0;
  double temperature = 1.0;
  double beta_p = 0.2;
  double beta_q = 0.2;  // raw coefficient; m^2 w^2 beta_q carries units of 1/time
  double force = 0.0;
  int dim = 16;

  double kt() const { return kb * temperature; }
  /// hbar w / (2 kB T)
  double xi() const { return hbar * omega / (2.0 * kt()); }
  /// hbar w / (kB T)
  double eta() const { return 2.0 * xi(); }
  /// m^2 w^2 beta_q, the position-channel rate in 1/time.
  double beta_q_scaled() const { return mass * mass * omega * omega * beta_q; }

  /// Throws InvalidModel on non-positive scales, negative frictions or dim < 1.
  void validate() const;
};

/// Population of the highest retained level above which truncation is
/// considered visible.
inline constexpr double kTopLevelPopulationGuard = 1e-6;

ComplexMatrix position_matrix(const OscillatorModel& model);
ComplexMatrix momentum_matrix(const OscillatorModel& model);

/// Exact diagonal hbar w (n + 1/2); not assembled from the truncated q and p.
ComplexMatrix hamiltonian(const OscillatorModel& model);
RealVector energies(const OscillatorModel& model);

struct LadderOperators {
  ComplexMatrix a;
  ComplexMatrix a_dagger;
};

LadderOperators ladder_operators(const OscillatorModel& model);

/// Truncated partition function Z_d = sum_{n<d} exp(-E_n / kT).
double partition_function(const OscillatorModel& model);
ComplexMatrix gibbs_state(const OscillatorModel& model);

}  // namespace qthermo
