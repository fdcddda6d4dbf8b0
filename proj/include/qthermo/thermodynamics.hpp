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

// Thermodynamic functionals along a trajectory. All rates are exact trace
// formulas evaluated at a single state:
//
//   dE/dt  = Tr(L(rho) H)             heat  = Tr(R(rho) H)
//   work   = f Tr(p rho)/m            dS/dt = -kB Tr(R(rho) ln rho)
//   dSp/dt = kB Tr(R(rho)(ln rho_eq - ln rho))
//   dSf/dt = heat / T                 F = kT S(rho|rho_eq) - kT ln Z
//
// where R is the generator minus its Hamiltonian and force parts.

#pragma once

#include <vector>

#include "qthermo/friction.hpp"
#include "qthermo/liouvillian.hpp"
#include "qthermo/operator_core.hpp"
#include "qthermo/oscillator.hpp"
#include "qthermo/propagator.hpp"

namespace qthermo {

/// Everything needed to evaluate records for one generator.
struct ThermoContext {
  SpectralSystem system;
  Superoperator generator;
  double kb = 1.0;
  double temperature = 1.0;
  double force = 0.0;
  ComplexMatrix hamiltonian;
  ComplexMatrix rho_eq;
  ComplexMatrix log_rho_eq;  // -H/kT - ln Z, from the spectrum
  double log_z = 0.0;        // ln Z_d, shifted to avoid underflow

  double kt() const { return kb * temperature; }
};

ThermoContext make_thermo_context(const SpectralSystem& system, const Superoperator& generator,
                                  double kb, double temperature, double force);
ThermoContext make_thermo_context(const OscillatorModel& model, const Superoperator& generator);

struct ThermoRecord {
  double t = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double ds_dt = 0.0;
  double dsp_dt = 0.0;
  double dsf_dt = 0.0;
  double heat_rate = 0.0;
  double work_rate = 0.0;
  double de_dt = 0.0;
  double free_energy = 0.0;
  double rel_entropy = 0.0;
  double min_eig = 0.0;
  int neg_count = 0;
  double purity = 0.0;
  double trace_err = 0.0;
  int clamped = 0;  // eigenvalues raised to the log floor; rates are regularized
};

/// R(rho) = L(rho) - (1/i hbar)[H, rho] + (f/i hbar)[q, rho].
ComplexMatrix dissipator_part(const ThermoContext& ctx, const ComplexMatrix& rho);
ComplexMatrix dissipator_part(const Superoperator& generator, const OscillatorModel& model,
                              const ComplexMatrix& rho);

/// Tr(R(rho) H). Throws DomainError if the imaginary part is not rounding-level.
double heat_rate(const ComplexMatrix& r_rho, const ComplexMatrix& hamiltonian);
/// f Tr(p rho)/m.
double work_rate(double force, double mass, const ComplexMatrix& momentum, const ComplexMatrix& rho);
double work_rate(const OscillatorModel& model, const ComplexMatrix& rho);

struct EntropyRates {
  double ds_dt = 0.0;
  double dsp_dt = 0.0;
  double dsf_dt = 0.0;
  int clamped = 0;
};

EntropyRates entropy_rates(const ThermoContext& ctx, const ComplexMatrix& rho);

/// kT S(rho|rho_eq) - kT ln Z_d.
double free_energy(const ThermoContext& ctx, const ComplexMatrix& rho);
/// dF/dt = dE/dt - T dS/dt from the trace formulas.
double free_energy_rate(const ThermoContext& ctx, const ComplexMatrix& rho);

/// Tr(rho1 ln rho1 - rho1 ln rho2) with both logarithms clamped at kLogClamp.
double relative_entropy(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

/// -kB Tr(rho ln rho) with the log clamped.
double von_neumann_entropy(const ComplexMatrix& rho, double kb = 1.0);

struct EquipartitionResiduals {
  double kinetic = 0.0;
  double potential = 0.0;
};

/// kinetic   = (kT/2) <i[p,q]/hbar> - <(p Theta^p + Theta^p p)/2>/(2m)
/// potential = kT m <[V', p]/(i hbar)> - <(V' Theta^q + Theta^q V')/2>
/// with V' = dV/dq. The commutators equal 1 and V'' without truncation;
/// in the truncated basis they keep the identities exact at rho_eq.
EquipartitionResiduals equipartition_residuals(const SpectralSystem& sys, double kt,
                                               const ComplexMatrix& rho,
                                               const ComplexMatrix& theta_p,
                                               const ComplexMatrix& theta_q);

ThermoRecord thermo_record(const ThermoContext& ctx, const ComplexMatrix& rho, double t);
std::vector<ThermoRecord> analyze_trajectory(const ThermoContext& ctx, const Trajectory& traj);

inline constexpr double kEntropyFiniteDifferenceTolerance = 1e-4;

/// Largest |(S_{n+1} - S_{n-1})/(2 dt) - dS/dt_n| over interior records with
/// no clamped eigenvalues at n-1, n, n+1. Diagnostic only.
double entropy_rate_fd_error(const std::vector<ThermoRecord>& records);

}  // namespace qthermo
