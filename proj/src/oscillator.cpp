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

#include "qthermo/oscillator.hpp"

#include <cmath>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

void require_levels(const OscillatorModel& model, int min_dim, const char* what) {
  model.validate();
  if (model.dim < min_dim) {
    throw InvalidModel(std::string(what) + ": needs dim >= " + std::to_string(min_dim));
  }
}

}  // namespace

void OscillatorModel::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidModel(std::string(name) + " must be positive and finite");
    }
  };
  positive(mass, "mass");
  positive(omega, "omega");
  positive(hbar, "hbar");
  positive(kb, "kb");
  positive(temperature, "temperature");
  if (!(beta_p >= 0.0) || !std::isfinite(beta_p)) throw InvalidModel("beta_p must be >= 0");
  if (!(beta_q >= 0.0) || !std::isfinite(beta_q)) throw InvalidModel("beta_q must be >= 0");
  if (!std::isfinite(force)) throw InvalidModel("force must be finite");
  if (dim < 1) throw InvalidModel("dim must be >= 1");
}

ComplexMatrix position_matrix(const OscillatorModel& model) {
  require_levels(model, 2, "position_matrix");
  const double scale = std::sqrt(model.hbar / (2.0 * model.mass * model.omega));
  ComplexMatrix q = ComplexMatrix::Zero(model.dim, model.dim);
  for (int n = 0; n + 1 < model.dim; ++n) {
    const double v = scale * std::sqrt(static_cast<double>(n + 1));
    q(n, n + 1) = v;
    q(n + 1, n) = v;
  }
  return q;
}

ComplexMatrix momentum_matrix(const OscillatorModel& model) {
  require_levels(model, 2, "momentum_matrix");
  const double scale = std::sqrt(model.mass * model.omega * model.hbar / 2.0);
  ComplexMatrix p = ComplexMatrix::Zero(model.dim, model.dim);
  for (int n = 0; n + 1 < model.dim; ++n) {
    const double v = scale * std::sqrt(static_cast<double>(n + 1));
    p(n, n + 1) = Complex(0.0, -v);
    p(n + 1, n) = Complex(0.0, v);
  }
  return p;
}

RealVector energies(const OscillatorModel& model) {
  require_levels(model, 1, "energies");
  RealVector e(model.dim);
  for (int n = 0; n < model.dim; ++n) e(n) = model.hbar * model.omega * (n + 0.5);
  return e;
}

ComplexMatrix hamiltonian(const OscillatorModel& model) {
  return energies(model).cast<Complex>().asDiagonal();
}

LadderOperators ladder_operators(const OscillatorModel& model) {
  require_levels(model, 2, "ladder_operators");
  const ComplexMatrix q = position_matrix(model);
  const ComplexMatrix p = momentum_matrix(model);
  const double cq = std::sqrt(model.mass * model.omega / (2.0 * model.hbar));
  const double cp = std::sqrt(1.0 / (2.0 * model.mass * model.hbar * model.omega));
  const Complex i(0.0, 1.0);
  return {cq * q + i * cp * p, cq * q - i * cp * p};
}

double partition_function(const OscillatorModel& model) {
  const RealVector e = energies(model);
  double z = 0.0;
  for (int n = 0; n < model.dim; ++n) z += std::exp(-e(n) / model.kt());
  return z;
}

ComplexMatrix gibbs_state(const OscillatorModel& model) {
  const RealVector e = energies(model);
  // Weights relative to the ground level so low temperatures do not underflow.
  RealVector w(model.dim);
  for (int n = 0; n < model.dim; ++n) w(n) = std::exp(-(e(n) - e(0)) / model.kt());
  w /= w.sum();
  return w.cast<Complex>().asDiagonal();
}

}  // namespace qthermo
