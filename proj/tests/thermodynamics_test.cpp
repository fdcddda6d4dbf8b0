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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "qthermo/errors.hpp"
#include "qthermo/friction.hpp"
#include "qthermo/liouvillian.hpp"
#include "qthermo/oscillator.hpp"
#include "qthermo/propagator.hpp"
#include "qthermo/thermodynamics.hpp"
#include "support.hpp"

using namespace qthermo;
using qthermo::testing::random_density;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<ThermoRecord> run(const OscillatorModel& m, ModelKind kind, const InitialCondition& ic,
                              int steps = 1000, double dt = kPi / 200.0) {
  const Superoperator l = build_liouvillian(m, kind);
  const ThermoContext ctx = make_thermo_context(m, l);
  return analyze_trajectory(ctx, evolve(l, initial_density(ic, m.dim), dt, steps));
}

}  // namespace

TEST_SUITE("thermodynamics") {

TEST_CASE("equilibrium functionals at unit parameters") {
  const OscillatorModel m;
  const ThermoContext ctx = make_thermo_context(m, build_liouvillian(m, ModelKind::FullHermitian));
  CHECK(ctx.log_z == doctest::Approx(std::log(0.9595172677)).epsilon(1e-10));
  CHECK((ctx.rho_eq - gibbs_state(m)).norm() < 1e-14);
  CHECK(free_energy(ctx, ctx.rho_eq) == doctest::Approx(0.0413249671).epsilon(1e-9));
  CHECK(von_neumann_entropy(ctx.rho_eq) == doctest::Approx(1.0406499392).epsilon(1e-9));
  CHECK(relative_entropy(ctx.rho_eq, ctx.rho_eq) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("relative entropy of the ground state") {
  const OscillatorModel m;
  const ComplexMatrix ground = initial_density(PureLevel{1}, m.dim);
  CHECK(relative_entropy(ground, gibbs_state(m)) == doctest::Approx(0.4586750329).epsilon(1e-9));
  CHECK(von_neumann_entropy(ground) == 0.0);
}

TEST_CASE("relative entropy is non-negative and free energy is bounded") {
  const OscillatorModel m;
  const ThermoContext ctx = make_thermo_context(m, build_liouvillian(m, ModelKind::FullHermitian));
  const double floor = -m.kt() * ctx.log_z;
  for (int seed = 0; seed < 8; ++seed) {
    const ComplexMatrix rho = random_density(m.dim, 200 + seed);
    CHECK(relative_entropy(rho, ctx.rho_eq) >= 0.0);
    CHECK(free_energy(ctx, rho) >= floor);
  }
  CHECK_THROWS_AS(relative_entropy(ctx.rho_eq, ComplexMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST_CASE("equipartition residuals vanish at equilibrium") {
  for (double xi : {0.25, 0.5, 1.0}) {
    OscillatorModel m;
    m.temperature = 1.0 / (2.0 * xi);
    const SpectralSystem sys = oscillator_system(m);
    const ComplexMatrix tp = hermitian_friction(sys, m.kt(), FrictionChannel::Momentum);
    const ComplexMatrix tq = hermitian_friction(sys, m.kt(), FrictionChannel::Position);
    const EquipartitionResiduals r = equipartition_residuals(sys, m.kt(), gibbs_state(m), tp, tq);
    CHECK(std::abs(r.kinetic) <= 1e-8);
    CHECK(std::abs(r.potential) <= 1e-8);
  }
}

TEST_CASE("kinetic equipartition residual of the ground state") {
  for (double xi : {0.25, 0.5, 2.0}) {
    OscillatorModel m;
    m.temperature = 1.0 / (2.0 * xi);
    const SpectralSystem sys = oscillator_system(m);
    const ComplexMatrix tp = hermitian_friction(sys, m.kt(), FrictionChannel::Momentum);
    const ComplexMatrix tq = hermitian_friction(sys, m.kt(), FrictionChannel::Position);
    const EquipartitionResiduals r =
        equipartition_residuals(sys, m.kt(), initial_density(PureLevel{1}, m.dim), tp, tq);
    // kT/2 - tanh(xi) <p^2>_0 / (2 m xi) with <p^2>_0 = m hbar w / 2.
    CHECK(r.kinetic == doctest::Approx(m.kt() * (1.0 - std::tanh(xi)) / 2.0).epsilon(1e-12));
  }
  const OscillatorModel m;
  const SpectralSystem sys = oscillator_system(m);
  const EquipartitionResiduals r = equipartition_residuals(
      sys, m.kt(), initial_density(PureLevel{1}, m.dim),
      hermitian_friction(sys, m.kt(), FrictionChannel::Momentum),
      hermitian_friction(sys, m.kt(), FrictionChannel::Position));
  CHECK(std::abs(r.kinetic - 0.2689414) <= 1e-6);
}

TEST_CASE("heat rate is carried by the equipartition residuals") {
  OscillatorModel m;
  m.beta_p = 0.3;
  m.beta_q = 0.15;
  const SpectralSystem sys = oscillator_system(m);
  const ComplexMatrix tp = hermitian_friction(sys, m.kt(), FrictionChannel::Momentum);
  const ComplexMatrix tq = hermitian_friction(sys, m.kt(), FrictionChannel::Position);
  const Superoperator l = build_liouvillian(m, ModelKind::FullHermitian);
  const ThermoContext ctx = make_thermo_context(m, l);
  for (int seed = 0; seed < 4; ++seed) {
    const ComplexMatrix rho = random_density(m.dim, 300 + seed);
    const EquipartitionResiduals r = equipartition_residuals(sys, m.kt(), rho, tp, tq);
    const double heat = heat_rate(dissipator_part(ctx, rho), ctx.hamiltonian);
    CHECK(heat == doctest::Approx(2.0 * m.beta_p * r.kinetic + m.beta_q * r.potential).epsilon(1e-10));
  }
}

TEST_CASE("first law holds with a constant force") {
  OscillatorModel m;
  m.force = 0.1;
  for (ModelKind k : {ModelKind::FullHermitian, ModelKind::FullNonHermitian,
                      ModelKind::CaldeiraLeggett}) {
    for (const ThermoRecord& r : run(m, k, MixedPowerLaw{2.0}, 400)) {
      CHECK(std::abs(r.de_dt - r.work_rate - r.heat_rate) <= 1e-9);
    }
  }
}

TEST_CASE("entropy balance") {
  const OscillatorModel m;
  for (const ThermoRecord& r : run(m, ModelKind::FullNonHermitian, MixedPowerLaw{1.0}, 300)) {
    CHECK(std::abs(r.ds_dt - r.dsf_dt - r.dsp_dt) <= 1e-9);
  }
}

TEST_CASE("entropy rate agrees with a finite difference of the entropy") {
  const OscillatorModel m;
  // Central differences carry an O(dt^2) error; the finer step keeps it below tolerance.
  const std::vector<ThermoRecord> recs =
      run(m, ModelKind::FullHermitian, MixedPowerLaw{1.0}, 1000, kPi / 1000.0);
  CHECK(entropy_rate_fd_error(recs) <= kEntropyFiniteDifferenceTolerance);
}

TEST_CASE("free energy decreases at the rate -T dSp/dt") {
  const OscillatorModel m;
  const Superoperator l = build_liouvillian(m, ModelKind::FullHermitian);
  const ThermoContext ctx = make_thermo_context(m, l);
  for (int seed = 0; seed < 4; ++seed) {
    const ComplexMatrix rho = random_density(m.dim, 400 + seed);
    const EntropyRates e = entropy_rates(ctx, rho);
    CHECK(free_energy_rate(ctx, rho) == doctest::Approx(-m.temperature * e.dsp_dt).epsilon(1e-9));
    CHECK(e.dsp_dt >= -1e-12);
  }
}

TEST_CASE("unitary runs conserve energy, entropy and free energy") {
  OscillatorModel m;
  m.beta_p = 0.0;
  m.beta_q = 0.0;
  const std::vector<ThermoRecord> recs = run(m, ModelKind::Unitary, MixedPowerLaw{2.0});
  for (const ThermoRecord& r : recs) {
    CHECK(std::abs(r.energy - recs.front().energy) <= 1e-10);
    CHECK(std::abs(r.entropy - recs.front().entropy) <= 1e-10);
    CHECK(std::abs(r.free_energy - recs.front().free_energy) <= 1e-10);
  }
}

TEST_CASE("records along a full-model run") {
  const OscillatorModel m;
  const std::vector<ThermoRecord> recs = run(m, ModelKind::FullHermitian, PureLevel{2});
  CHECK(recs.front().clamped == m.dim - 1);
  CHECK(recs.front().purity == doctest::Approx(1.0));
  for (std::size_t i = 1; i < recs.size(); ++i) {
    CHECK(recs[i].free_energy <= recs[i - 1].free_energy + 1e-10);
    CHECK(recs[i].rel_entropy >= 0.0);
    CHECK(recs[i].trace_err <= 1e-9);
  }
}

TEST_CASE("top level population warning fires once") {
  qthermo::testing::WarningCapture capture;
  OscillatorModel m;
  m.dim = 6;
  run(m, ModelKind::FullHermitian, PureLevel{6}, 20);
  CHECK(capture.messages.size() == 1);
}

TEST_CASE("heat rate rejects a complex trace") {
  const ComplexMatrix h = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix r = Complex(0.0, 1.0) * ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(heat_rate(r, h), DomainError);
}

}  // TEST_SUITE
