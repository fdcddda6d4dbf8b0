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

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qthermo/diagnostics.hpp"
#include "qthermo/operator_core.hpp"

namespace qthermo::testing {

inline ComplexMatrix random_matrix(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index d, std::uint64_t seed) {
  const ComplexMatrix m = random_matrix(d, seed);
  return 0.5 * (m + m.adjoint());
}

// Full-rank density matrix with a random eigenbasis.
inline ComplexMatrix random_density(Eigen::Index d, std::uint64_t seed) {
  const ComplexMatrix m = random_matrix(d, seed);
  ComplexMatrix rho = m * m.adjoint() + 0.1 * ComplexMatrix::Identity(d, d);
  return rho / rho.trace().real();
}

inline double rel_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

// Collects warnings for the lifetime of the object.
class WarningCapture {
 public:
  WarningCapture()
      : previous_(set_warning_sink([this](std::string_view m) { messages.emplace_back(m); })) {}
  ~WarningCapture() { set_warning_sink(previous_); }
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  std::vector<std::string> messages;

 private:
  WarningSink previous_;
};

}  // namespace qthermo::testing
