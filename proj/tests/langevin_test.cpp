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
#include <random>

#include <doctest.h>

#include "qthermo/errors.hpp"
#include "qthermo/langevin.hpp"
#include "support.hpp"

using namespace qthermo;

namespace {

ClassicalParams quick(double beta_p, double beta_q) {
  ClassicalParams c;
  c.beta_p = beta_p;
  c.beta_q = beta_q;
  c.n_trajectories = 1000;
  c.seed = 7;
  return c;
}

}  // namespace

TEST_SUITE("classical-langevin") {

TEST_CASE("pure-noise step has variance 2 kT beta_p m dt") {
  ClassicalParams c;
  c.omega = 1.0;
  c.beta_p = 0.5;
  c.mass = 1.5;
  c.temperature = 2.0;
  c.dt = 0.001;
  const PhasePoint s = euler_maruyama_step({0.0, 0.0}, c, 1.0, 0.0);
  CHECK(s.p * s.p == doctest::Approx(2.0 * c.kt() * c.beta_p * c.mass * c.dt).epsilon(1e-14));
  CHECK(s.q == 0.0);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  RunningMoments dp;
  for (int i = 0; i < 200000; ++i) dp.add(euler_maruyama_step({0.0, 0.0}, c, g(rng), g(rng)).p);
  const double expected = 2.0 * c.kt() * c.beta_p * c.mass * c.dt;
  CHECK(std::abs(dp.variance() - expected) < 5.0 * expected * std::sqrt(2.0 / 200000.0));
}

TEST_CASE("position noise uses beta_q") {
  ClassicalParams c;
  c.beta_p = 0.0;
  c.beta_q = 0.3;
  c.mass = 2.0;
  c.dt = 0.01;
  const PhasePoint s = euler_maruyama_step({0.0, 0.0}, c, 0.0, 1.0);
  CHECK(s.q * s.q == doctest::Approx(2.0 * c.kt() * c.beta_q * c.mass * c.dt));
  CHECK(s.p == 0.0);
}

TEST_CASE("deterministic step drifts energy by omega^2 dt^2 E") {
  ClassicalParams c;
  c.beta_p = 0.0;
  c.beta_q = 0.0;
  c.omega = 1.3;
  c.mass = 0.7;
  c.dt = 0.01;
  PhasePoint s{0.4, -0.9};
  auto energy = [&](const PhasePoint& x) {
    return x.p * x.p / (2.0 * c.mass) + 0.5 * c.mass * c.omega * c.omega * x.q * x.q;
  };
  for (int i = 0; i < 100; ++i) {
    const PhasePoint next = euler_maruyama_step(s, c, 0.3, -1.2);
    const double e = energy(s);
    CHECK(std::abs(energy(next) - e) <= 1.0001 * c.omega * c.omega * c.dt * c.dt * e);
    s = next;
  }
}

TEST_CASE("running moments merge like sequential accumulation") {
  RunningMoments all, a, b;
  for (int i = 0; i < 50; ++i) {
    const double x = std::sin(0.37 * i) + 0.01 * i;
    all.add(x);
    (i < 20 ? a : b).add(x);
  }
  a.merge(b);
  CHECK(a.count == all.count);
  CHECK(a.mean == doctest::Approx(all.mean).epsilon(1e-14));
  CHECK(a.variance() == doctest::Approx(all.variance()).epsilon(1e-13));
  RunningMoments empty;
  empty.merge(all);
  CHECK(empty.mean == all.mean);
  CHECK(all.variance() >= 0.0);
}

TEST_CASE("burn-in resolution") {
  ClassicalParams c;
  c.beta_p = 2.0;
  c.beta_q = 0.0;
  CHECK(c.resolved_burn_in_steps() == 2000);
  c.beta_p = 1.0;
  c.beta_q = 1.0;
  CHECK(c.resolved_burn_in_steps() == 2000);
  c.beta_p = 0.2;
  c.beta_q = 0.0;
  CHECK(c.resolved_burn_in_steps() == c.n_steps);
  c.burn_in_steps = 10;
  CHECK(c.resolved_burn_in_steps() == 10);
}

TEST_CASE("parameter validation") {
  ClassicalParams c;
  CHECK_NOTHROW(c.validate());
  c.dt = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidModel);
  c = ClassicalParams{};
  c.beta_q = -0.1;
  CHECK_THROWS_AS(c.validate(), InvalidModel);
  c = ClassicalParams{};
  c.n_trajectories = 0;
  CHECK_THROWS_AS(c.validate(), InvalidModel);

  qthermo::testing::WarningCapture capture;
  c = ClassicalParams{};
  c.dt = 0.1;
  c.validate();
  CHECK(capture.messages.size() == 1);
}

TEST_CASE("identical seeds give identical ensembles") {
  ClassicalParams c = quick(1.0, 1.0);
  c.n_trajectories = 200;
  c.n_steps = 500;
  c.burn_in_steps = 250;
  const EnsembleResult a = simulate_ensemble(c);
  const EnsembleResult b = simulate_ensemble(c);
  CHECK(a.stationary.p2_over_m.mean == b.stationary.p2_over_m.mean);
  CHECK(a.stationary.mw2_q2.m2 == b.stationary.mw2_q2.m2);
  CHECK(a.whole_run.residual.mean == b.whole_run.residual.mean);
  c.seed = 8;
  const EnsembleResult d = simulate_ensemble(c);
  CHECK(a.stationary.p2_over_m.mean != d.stationary.p2_over_m.mean);
}

TEST_CASE("ensemble bookkeeping") {
  ClassicalParams c = quick(1.0, 1.0);
  c.n_trajectories = 130;
  c.n_steps = 450;
  c.window_steps = 100;
  const EnsembleResult r = simulate_ensemble(c);
  CHECK(r.burn_in_steps == 450);
  CHECK(r.windows.size() == 5);
  CHECK(r.windows.back().t_end == doctest::Approx(450 * c.dt));
  CHECK(r.windows.front().de_dt.count == 130);
  CHECK(r.whole_run.t_end == doctest::Approx(450 * c.dt));
  CHECK_THROWS_AS(stationary_check(r.stationary, c), InsufficientSamples);
}

TEST_CASE("stationary moments match kT for each dissipation split") {
  for (auto [bp, bq] : {std::pair{2.0, 0.0}, std::pair{0.0, 2.0}, std::pair{1.0, 1.0}}) {
    CAPTURE(bp);
    CAPTURE(bq);
    const ClassicalParams c = quick(bp, bq);
    const EnsembleResult r = simulate_ensemble(c);
    const StationaryResiduals s = stationary_check(r.stationary, c);
    CHECK(s.p2.within(3.0));
    CHECK(s.q2.within(3.0));
    CHECK(s.equi_r.within(3.0));
    CHECK(s.mean_q.within(3.0));
    CHECK(energy_balance_check(r, c).whole_run.within(3.0));
  }
}

TEST_CASE("constant force shifts the mean position") {
  ClassicalParams c = quick(2.0, 0.0);
  c.force = 0.5;
  c.initial = InitialEnsemble::Equilibrium;
  const EnsembleResult r = simulate_ensemble(c);
  const StationaryResiduals s = stationary_check(r.stationary, c);
  CHECK(c.shift() == 0.5);
  CHECK(r.stationary.q.mean == doctest::Approx(0.5).epsilon(0.05));
  CHECK(s.mean_q.within(3.0));
  CHECK(s.q2.within(3.0));
  const EnergyBalance e = energy_balance_check(r, c);
  CHECK(e.whole_run.within(3.0));
}

TEST_CASE("hot start relaxes towards kT") {
  ClassicalParams c = quick(2.0, 0.0);
  c.initial = InitialEnsemble::Hot;
  const EnsembleResult r = simulate_ensemble(c);
  CHECK(r.windows.front().p2_over_m.mean > 2.0 * c.kt());
  CHECK(r.windows.back().p2_over_m.mean == doctest::Approx(c.kt()).epsilon(0.1));
}

}  // TEST_SUITE
