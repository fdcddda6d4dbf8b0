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

// Subcommands of the qthermo executable. Each writes its CSV files into
// `out_dir` and a short summary to `out`, returning a process exit code.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "qthermo/cli/config.hpp"
#include "qthermo/thermodynamics.hpp"

namespace qthermo::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitPartial = 4,
};

struct QuantumRunSummary {
  double final_energy = 0.0;
  double equilibrium_energy = 0.0;  // Tr(H rho_eq) in the truncated space
  double max_negative_dsp = 0.0;    // largest -dSp/dt over steps, 0 if never negative
  int negative_eigenvalue_steps = 0;
  int clamped_steps = 0;
  double max_first_law_residual = 0.0;
};

struct QuantumRunResult {
  std::vector<ThermoRecord> records;
  QuantumRunSummary summary;
};

/// Builds the generator, propagates and analyses every step.
QuantumRunResult run_quantum(const RunConfig& config);

/// Writes "# config: <json>", the header row and one row per record.
void write_trajectory_csv(std::ostream& os, const RunConfig& config,
                          const std::vector<ThermoRecord>& records);

int quantum_run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out);
int lindblad_check(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out);
int qome_compare(const RunConfig& config, std::ostream& out);
int classical_run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out);
int sweep(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out);
int friction_dump(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out);

/// Entry point of the executable.
int main(int argc, char** argv);

}  // namespace qthermo::cli
