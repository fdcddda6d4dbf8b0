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

// Classical Hamilton-Langevin dynamics of one oscillator degree of freedom
// with friction and noise in both equations:
//
//   dp = (-V'(q) - beta_p p + f) dt + sqrt(2 kT beta_p m) dW_p
//   dq = (p/m - beta_q m V'(q)) dt  + sqrt(2 kT beta_q m) dW_q
//
// with V'(q) = m w^2 q, integrated by Euler-Maruyama.

#pragma once

#include <cstdint>
#include <vector>

namespace qthermo {

enum class InitialEnsemble {
  Cold,         // p = q = 0
  Equilibrium,  // Gibbs at T
  Hot,          // Gibbs at 4T
};

struct ClassicalParams {
  double mass = 1.0;
  double omega = 1.0;
  double kb = 1.0;
  double temperature = 1.0;
  double beta_p = 0.2;
  double beta_q = 0.0;
  double force = 0.0;
  double dt = 0.0025;
  int n_steps = 4000;
  int n_trajectories = 5000;
  int burn_in_steps = -1;  // < 0: 10 / (beta_p + m^2 w^2 beta_q), rounded up to steps
  int window_steps = 100;
  std::uint64_t seed = 0;
  InitialEnsemble initial = InitialEnsemble::Cold;

  double kt() const { return kb * temperature; }
  double beta_q_scaled() const { return mass * mass * omega * omega * beta_q; }
  /// Stationary mean position f / (m w^2).
  double shift() const { return force / (mass * omega * omega); }

  /// Throws InvalidModel on bad values; warns when dt exceeds
  /// 0.01 / max(w, beta_p, m^2 w^2 beta_q).
  void validate() const;
  int resolved_burn_in_steps() const;
};

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

/// One step with given standard-normal draws.
PhasePoint euler_maruyama_step(const PhasePoint& state, const ClassicalParams& params, double n_p,
                               double n_q);

/// Welford accumulator; merge() combines disjoint sample sets.
struct RunningMoments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  void merge(const RunningMoments& other);
  double variance() const;  // sample variance
  double stderr_of_mean() const;
};

/// Moments across trajectories of per-trajectory time averages taken after
/// burn-in. Positions are measured from the stationary shift f/(m w^2).
struct EnsembleStats {
  RunningMoments p;
  RunningMoments q;
  RunningMoments p2_over_m;   // <p^2>/m
  RunningMoments mw2_q2;      // m w^2 <(q - shift)^2>
  RunningMoments m_vprime2;   // m <(m w^2 (q - shift))^2>
  RunningMoments energy;      // <p^2/2m + m w^2 q^2/2>
  std::uint64_t samples_per_trajectory = 0;

  void merge(const EnsembleStats& other);
};

/// One window of the first-law balance: every field is an ensemble mean of a
/// per-trajectory quantity with its standard error across trajectories.
struct WindowRecord {
  double t_start = 0.0;
  double t_end = 0.0;
  RunningMoments energy_end;
  RunningMoments p2_over_m;   // time average over the window
  RunningMoments mw2_q2;      // m w^2 q^2, time average over the window
  RunningMoments de_dt;       // (E(t_end) - E(t_start)) / window
  RunningMoments work_rate;   // <f p/m>
  RunningMoments heat_p;      // 2 beta_p (kT/2 - p^2/2m)
  RunningMoments heat_q;      // beta_q (kT m V'' - m V'^2)
  RunningMoments residual;    // de_dt - work - heat_p - heat_q

  void merge(const WindowRecord& other);
};

struct EnsembleResult {
  EnsembleStats stationary;
  std::vector<WindowRecord> windows;
  WindowRecord whole_run;  // balance over [0, n_steps dt]
  int burn_in_steps = 0;
};

/// Runs all trajectories; trajectory k draws from its own engine seeded by
/// (seed, k), so results do not depend on thread scheduling.
EnsembleResult simulate_ensemble(const ClassicalParams& params);

struct Residual {
  double value = 0.0;
  double std_error = 0.0;
  bool within(double sigmas) const;
};

struct StationaryResiduals {
  Residual p2;       // <p^2>/m - kT
  Residual q2;       // m w^2 <(q - shift)^2> - kT
  Residual equi_r;   // m <V'^2> - kT m V''
  Residual mean_q;   // <q> - shift
};

/// Throws InsufficientSamples when a standard error exceeds 0.1 kT
/// (equi_r is compared after dividing by m V'').
StationaryResiduals stationary_check(const EnsembleStats& stats, const ClassicalParams& params);

struct EnergyBalance {
  Residual whole_run;
  Residual worst_window;  // largest |value| / stderr among windows
};

EnergyBalance energy_balance_check(const EnsembleResult& result, const ClassicalParams& params);

}  // namespace qthermo
