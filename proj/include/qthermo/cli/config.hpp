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

// Run configuration: a single JSON document. Every key is optional and
// defaults to the reference parameters; unknown keys are rejected.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qthermo/langevin.hpp"
#include "qthermo/liouvillian.hpp"
#include "qthermo/oscillator.hpp"
#include "qthermo/propagator.hpp"

namespace qthermo::cli {

inline constexpr double kPi = 3.14159265358979323846;

struct ClassicalSection {
  int trajectories = 5000;
  int steps = 4000;
  double dt = 0.0025;
  int window_steps = 100;
  int burn_in_steps = -1;
  InitialEnsemble initial = InitialEnsemble::Cold;
};

enum class RegionKinds { Hermitian, NonHermitian, Both };

struct LindbladSection {
  std::vector<double> beta_p{0.05, 0.1, 0.2, 0.4, 0.8};
  std::vector<double> beta_q{0.05, 0.1, 0.2, 0.4, 0.8};
  std::vector<double> xi{0.25, 0.5, 1.0, 2.0};
  RegionKinds kinds = RegionKinds::Both;
  bool choi = true;
  double choi_dt = kPi / 200.0;
  int boundary_samples = 11;
  double boundary_x_max = 1.0;
};

enum class SweepAxis { Model, F, S };

struct SweepSection {
  SweepAxis axis = SweepAxis::F;
  std::vector<std::string> models;  // axis = model
  std::vector<double> values;       // axis = f or s
  int threads = 0;                  // 0: hardware concurrency
};

enum class FrictionRoute { Spectral, Sylvester, Bernoulli, ClosedForm };

struct FrictionSection {
  FrictionChannel channel = FrictionChannel::Momentum;
  bool hermitian = true;
  FrictionRoute route = FrictionRoute::Spectral;
  int order = 8;
};

struct RunConfig {
  OscillatorModel model;  // defaults: hbar = kb = T = m = w = 1, beta_p = beta_q = 0.2, d = 16
  double dt = kPi / 200.0;
  int steps = 1000;
  ModelKind kind = ModelKind::FullHermitian;
  InitialCondition initial = MixedPowerLaw{1.0};
  std::string output;  // file name inside --out; empty: per-command default
  std::uint64_t seed = 0;
  int emit_precision = 17;
  ClassicalSection classical;
  LindbladSection lindblad;
  SweepSection sweep;
  FrictionSection friction;
};

/// Parses a JSON document; `source` names it in diagnostics. Throws
/// ConfigError with "source:line: message" on syntax errors, unknown keys,
/// wrong types or invalid values.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Effective configuration as compact single-line JSON; parse_config of the
/// result reproduces `config`.
std::string config_to_json(const RunConfig& config);

/// Classical parameters implied by the configuration.
ClassicalParams classical_params(const RunConfig& config);

/// 64-bit FNV-1a of the effective configuration JSON, as 16 hex digits.
std::string config_hash(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace qthermo::cli
