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

#include "qthermo/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "qthermo/diagnostics.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/simd/kernels.hpp"

namespace qthermo {

ComplexMatrix initial_density(const InitialCondition& ic, int dim, const ComplexMatrix& gibbs) {
  if (dim < 1) throw DomainError("initial_density: dim must be positive");
  return std::visit(
      [&](const auto& c) -> ComplexMatrix {
        using T = std::decay_t<decltype(c)>;
        ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
        if constexpr (std::is_same_v<T, MixedPowerLaw>) {
          if (!(c.f > 0.0)) throw DomainError("MixedPowerLaw: f must be positive");
          double norm = 0.0;
          for (int k = 1; k <= dim; ++k) norm += std::pow(static_cast<double>(k), -c.f);
          for (int k = 1; k <= dim; ++k) rho(k - 1, k - 1) = std::pow(static_cast<double>(k), -c.f) / norm;
        } else if constexpr (std::is_same_v<T, PureLevel>) {
          if (c.s < 1 || c.s > dim) {
            throw DomainError("PureLevel: s must be in [1, " + std::to_string(dim) + "]");
          }
          rho(c.s - 1, c.s - 1) = 1.0;
        } else if constexpr (std::is_same_v<T, GibbsInitial>) {
          if (gibbs.rows() != dim || gibbs.cols() != dim) {
            throw DimensionMismatch("GibbsInitial: Gibbs state has the wrong dimension");
          }
          rho = gibbs;
        } else {
          if (c.rho.rows() != dim || c.rho.cols() != dim) {
            throw DimensionMismatch("CustomInitial: matrix has the wrong dimension");
          }
          require_hermitian(c.rho, "CustomInitial");
          if (std::abs(c.rho.trace() - Complex(1.0)) > 1e-10) {
            throw DomainError("CustomInitial: trace must be 1");
          }
          rho = c.rho;
        }
        return rho;
      },
      ic);
}

Trajectory evolve(const Superoperator& generator, const ComplexMatrix& rho0, double dt, int steps) {
  if (steps < 1) throw DomainError("evolve: steps must be >= 1");
  if (!(dt > 0.0)) throw DomainError("evolve: dt must be positive");
  const Eigen::Index d = rho0.rows();
  if (generator.op_dim() != d) throw DimensionMismatch("evolve: generator and rho0 differ");
  require_hermitian(rho0, "evolve");
  if (std::abs(rho0.trace() - Complex(1.0)) > kTraceDriftLimit) {
    throw TraceDrift("evolve: initial trace differs from 1");
  }

  Trajectory traj;
  traj.step_map = exponentiate(generator, dt);
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  const ComplexMatrix& p = traj.step_map.matrix();
  const auto n = static_cast<std::size_t>(d * d);
  ComplexMatrix next(d, d);
  for (int step = 1; step <= steps; ++step) {
    const ComplexMatrix& cur = traj.states.back();
    simd::cmatvec(p.data(), cur.data(), next.data(), n);
    const ComplexMatrix herm = 0.5 * (next + next.adjoint());
    traj.max_hermitian_correction =
        std::max(traj.max_hermitian_correction, (herm - next).norm());
    const double drift = std::abs(herm.trace() - Complex(1.0));
    traj.max_trace_error = std::max(traj.max_trace_error, drift);
    if (drift > kTraceDriftLimit) {
      throw TraceDrift("evolve: |Tr rho - 1| = " + std::to_string(drift) + " at step " +
                       std::to_string(step));
    }
    traj.times.push_back(step * dt);
    traj.states.push_back(herm);
  }
  if (traj.max_hermitian_correction > kHermitianCorrectionLimit) {
    warn("evolve: Hermitian projection removed " + std::to_string(traj.max_hermitian_correction));
  }
  return traj;
}

SpectralProbe spectral_probe(const ComplexMatrix& rho, double neg_threshold) {
  const HermitianEigenSystem eig = hermitian_eigendecompose(rho);
  SpectralProbe out;
  out.min_eig = eig.eigenvalues.minCoeff();
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) < neg_threshold) ++out.neg_count;
  }
  out.purity = trace_product(rho, rho).real();
  return out;
}

}  // namespace qthermo
