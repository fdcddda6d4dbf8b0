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

#include "qthermo/thermodynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qthermo/diagnostics.hpp"
#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

// Eigen data of one state, shared by every functional evaluated on it.
struct StateSpectrum {
  ComplexMatrix log;
  double tr_rho_log = 0.0;  // Tr(rho ln rho)
  SpectralProbe probe;
  int clamped = 0;
};

StateSpectrum analyze_state(const ComplexMatrix& rho) {
  const HermitianEigenSystem eig = hermitian_eigendecompose(rho);
  StateSpectrum s;
  s.probe.min_eig = eig.eigenvalues.minCoeff();
  double tr = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lam = eig.eigenvalues(i);
    if (lam < kNegativeEigenvalueThreshold) ++s.probe.neg_count;
    if (lam < kLogClamp) ++s.clamped;
    tr += lam * std::log(std::max(lam, kLogClamp));
  }
  s.tr_rho_log = tr;
  s.probe.purity = trace_product(rho, rho).real();
  s.log = matrix_function_hermitian(eig, [](double x) { return std::log(std::max(x, kLogClamp)); });
  return s;
}

EntropyRates rates_from(const ThermoContext& ctx, const ComplexMatrix& r_rho,
                        const StateSpectrum& s, double heat) {
  EntropyRates out;
  out.ds_dt = -ctx.kb * trace_product(r_rho, s.log).real();
  out.dsp_dt = ctx.kb * trace_product(r_rho, ctx.log_rho_eq - s.log).real();
  out.dsf_dt = heat / ctx.temperature;
  out.clamped = s.clamped;
  return out;
}

}  // namespace

ThermoContext make_thermo_context(const SpectralSystem& system, const Superoperator& generator,
                                  double kb, double temperature, double force) {
  if (generator.op_dim() != system.dim()) {
    throw DimensionMismatch("make_thermo_context: generator and system differ");
  }
  ThermoContext ctx;
  ctx.system = system;
  ctx.generator = generator;
  ctx.kb = kb;
  ctx.temperature = temperature;
  ctx.force = force;
  ctx.hamiltonian = system.hamiltonian();

  const double kt = ctx.kt();
  const double e0 = system.energies.minCoeff();
  double z_shifted = 0.0;
  for (Eigen::Index n = 0; n < system.dim(); ++n) {
    z_shifted += std::exp(-(system.energies(n) - e0) / kt);
  }
  ctx.log_z = -e0 / kt + std::log(z_shifted);
  const double log_z = ctx.log_z;
  ctx.log_rho_eq = matrix_function_hermitian(
      ctx.hamiltonian, [kt, log_z](double e) { return -e / kt - log_z; });
  ctx.rho_eq = matrix_function_hermitian(
      ctx.hamiltonian, [kt, e0, z_shifted](double e) { return std::exp(-(e - e0) / kt) / z_shifted; });
  return ctx;
}

ThermoContext make_thermo_context(const OscillatorModel& model, const Superoperator& generator) {
  model.validate();
  return make_thermo_context(oscillator_system(model), generator, model.kb, model.temperature,
                             model.force);
}

ComplexMatrix dissipator_part(const ThermoContext& ctx, const ComplexMatrix& rho) {
  const Complex i(0.0, 1.0);
  const double hbar = ctx.system.hbar;
  ComplexMatrix r = ctx.generator.apply(rho) - commutator(ctx.hamiltonian, rho) / (i * hbar);
  if (ctx.force != 0.0) r += (ctx.force / (i * hbar)) * commutator(ctx.system.position, rho);
  return r;
}

ComplexMatrix dissipator_part(const Superoperator& generator, const OscillatorModel& model,
                              const ComplexMatrix& rho) {
  const Complex i(0.0, 1.0);
  ComplexMatrix r = generator.apply(rho) - commutator(hamiltonian(model), rho) / (i * model.hbar);
  if (model.force != 0.0) {
    r += (model.force / (i * model.hbar)) * commutator(position_matrix(model), rho);
  }
  return r;
}

double heat_rate(const ComplexMatrix& r_rho, const ComplexMatrix& hamiltonian) {
  const Complex h = trace_product(r_rho, hamiltonian);
  const double scale = std::max(1.0, r_rho.norm() * hamiltonian.norm());
  if (std::abs(h.imag()) > 1e-11 * scale) {
    throw DomainError("heat_rate: Tr(R rho H) has imaginary part " + std::to_string(h.imag()));
  }
  return h.real();
}

double work_rate(double force, double mass, const ComplexMatrix& momentum, const ComplexMatrix& rho) {
  if (force == 0.0) return 0.0;
  return force * trace_product(momentum, rho).real() / mass;
}

double work_rate(const OscillatorModel& model, const ComplexMatrix& rho) {
  if (model.force == 0.0) return 0.0;
  return work_rate(model.force, model.mass, momentum_matrix(model), rho);
}

EntropyRates entropy_rates(const ThermoContext& ctx, const ComplexMatrix& rho) {
  const ComplexMatrix r = dissipator_part(ctx, rho);
  return rates_from(ctx, r, analyze_state(rho), heat_rate(r, ctx.hamiltonian));
}

double free_energy(const ThermoContext& ctx, const ComplexMatrix& rho) {
  const StateSpectrum s = analyze_state(rho);
  const double rel = s.tr_rho_log - trace_product(rho, ctx.log_rho_eq).real();
  return ctx.kt() * rel - ctx.kt() * ctx.log_z;
}

double free_energy_rate(const ThermoContext& ctx, const ComplexMatrix& rho) {
  const double de = trace_product(ctx.generator.apply(rho), ctx.hamiltonian).real();
  return de - ctx.temperature * entropy_rates(ctx, rho).ds_dt;
}

double relative_entropy(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols()) {
    throw DimensionMismatch("relative_entropy: operand dimensions differ");
  }
  const StateSpectrum s1 = analyze_state(rho1);
  const ClampedLog l2 = log_hermitian_clamped(rho2);
  return s1.tr_rho_log - trace_product(rho1, l2.log).real();
}

double von_neumann_entropy(const ComplexMatrix& rho, double kb) {
  return -kb * analyze_state(rho).tr_rho_log;
}

EquipartitionResiduals equipartition_residuals(const SpectralSystem& sys, double kt,
                                               const ComplexMatrix& rho,
                                               const ComplexMatrix& theta_p,
                                               const ComplexMatrix& theta_q) {
  const Complex i(0.0, 1.0);
  const double hbar = sys.hbar;
  const double m = sys.mass;
  const ComplexMatrix& p = sys.momentum;
  const ComplexMatrix& q = sys.position;
  const ComplexMatrix& vp = sys.potential_gradient;

  const ComplexMatrix unit_pq = i * commutator(p, q) / hbar;
  const ComplexMatrix curvature = commutator(vp, p) / (i * hbar);
  const ComplexMatrix kin = 0.5 * anticommutator(p, theta_p);
  const ComplexMatrix pot = 0.5 * anticommutator(vp, theta_q);

  EquipartitionResiduals out;
  out.kinetic = 0.5 * kt * trace_product(rho, unit_pq).real() -
                trace_product(rho, kin).real() / (2.0 * m);
  out.potential = kt * m * trace_product(rho, curvature).real() - trace_product(rho, pot).real();
  return out;
}

ThermoRecord thermo_record(const ThermoContext& ctx, const ComplexMatrix& rho, double t) {
  const StateSpectrum s = analyze_state(rho);
  const ComplexMatrix l_rho = ctx.generator.apply(rho);
  const ComplexMatrix r = dissipator_part(ctx, rho);

  ThermoRecord rec;
  rec.t = t;
  rec.energy = trace_product(ctx.hamiltonian, rho).real();
  rec.entropy = -ctx.kb * s.tr_rho_log;
  rec.heat_rate = heat_rate(r, ctx.hamiltonian);
  rec.work_rate = work_rate(ctx.force, ctx.system.mass, ctx.system.momentum, rho);
  rec.de_dt = trace_product(l_rho, ctx.hamiltonian).real();
  const EntropyRates rates = rates_from(ctx, r, s, rec.heat_rate);
  rec.ds_dt = rates.ds_dt;
  rec.dsp_dt = rates.dsp_dt;
  rec.dsf_dt = rates.dsf_dt;
  rec.rel_entropy = s.tr_rho_log - trace_product(rho, ctx.log_rho_eq).real();
  rec.free_energy = ctx.kt() * rec.rel_entropy - ctx.kt() * ctx.log_z;
  rec.min_eig = s.probe.min_eig;
  rec.neg_count = s.probe.neg_count;
  rec.purity = s.probe.purity;
  rec.trace_err = std::abs(rho.trace() - Complex(1.0));
  rec.clamped = s.clamped;
  return rec;
}

std::vector<ThermoRecord> analyze_trajectory(const ThermoContext& ctx, const Trajectory& traj) {
  std::vector<ThermoRecord> out;
  out.reserve(traj.states.size());
  bool warned = false;
  const Eigen::Index top = ctx.system.dim() - 1;
  for (std::size_t n = 0; n < traj.states.size(); ++n) {
    const ComplexMatrix& rho = traj.states[n];
    if (!warned && top > 0 && rho(top, top).real() > kTopLevelPopulationGuard) {
      warn("top level population " + std::to_string(rho(top, top).real()) + " at t = " +
           std::to_string(traj.times[n]) + "; truncation may be visible");
      warned = true;
    }
    out.push_back(thermo_record(ctx, rho, traj.times[n]));
  }
  return out;
}

double entropy_rate_fd_error(const std::vector<ThermoRecord>& records) {
  double worst = 0.0;
  for (std::size_t n = 1; n + 1 < records.size(); ++n) {
    if (records[n - 1].clamped || records[n].clamped || records[n + 1].clamped) continue;
    const double dt = records[n + 1].t - records[n - 1].t;
    const double fd = (records[n + 1].entropy - records[n - 1].entropy) / dt;
    worst = std::max(worst, std::abs(fd - records[n].ds_dt));
  }
  return worst;
}

}  // namespace qthermo
