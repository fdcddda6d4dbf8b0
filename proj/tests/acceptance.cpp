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

// Acceptance suite. Prints one PASS/FAIL line per criterion.
//   qthermo_acceptance            run all criteria
//   qthermo_acceptance 3 7        run the listed criteria

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "qthermo/cli/commands.hpp"
#include "qthermo/cli/config.hpp"
#include "qthermo/diagnostics.hpp"
#include "qthermo/friction.hpp"
#include "qthermo/langevin.hpp"
#include "qthermo/liouvillian.hpp"
#include "qthermo/oscillator.hpp"
#include "qthermo/propagator.hpp"
#include "qthermo/thermodynamics.hpp"

namespace {

using namespace qthermo;
using cli::RunConfig;
namespace fs = std::filesystem;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTargetEnergy = 1.0819764;
constexpr double kTargetFreeEnergy = 0.0413249;
constexpr double kTargetKinetic = 0.2689414;
constexpr double kBoundaryX1 = 0.580027;
constexpr double kBoundaryX2 = 1.724057;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct NamedInitial {
  std::string label;
  InitialCondition ic;
};

std::vector<NamedInitial> standard_initials() {
  std::vector<NamedInitial> out;
  for (int f = 1; f <= 4; ++f) out.push_back({"f=" + std::to_string(f), MixedPowerLaw{double(f)}});
  for (int s = 1; s <= 4; ++s) out.push_back({"s=" + std::to_string(s), PureLevel{s}});
  return out;
}

struct Run {
  std::vector<ThermoRecord> records;
  double seconds = 0.0;
};

// Runs shared by several criteria, computed once.
class RunCache {
 public:
  const Run& get(ModelKind kind, const InitialCondition& ic, double force = 0.0,
                 double dt = kPi / 200.0, int steps = 1000) {
    const auto key = std::make_tuple(int(kind), ic.index(), tag(ic), force, dt, steps);
    auto it = runs_.find(key);
    if (it != runs_.end()) return it->second;
    RunConfig cfg;
    cfg.kind = kind;
    cfg.initial = ic;
    cfg.model.force = force;
    cfg.dt = dt;
    cfg.steps = steps;
    const auto t0 = std::chrono::steady_clock::now();
    Run run;
    run.records = cli::run_quantum(cfg).records;
    run.seconds = seconds_since(t0);
    return runs_.emplace(key, std::move(run)).first->second;
  }

 private:
  static double tag(const InitialCondition& ic) {
    if (const auto* m = std::get_if<MixedPowerLaw>(&ic)) return m->f;
    if (const auto* p = std::get_if<PureLevel>(&ic)) return p->s;
    return 0.0;
  }
  std::map<std::tuple<int, std::size_t, double, double, double, int>, Run> runs_;
};

RunCache& cache() {
  static RunCache c;
  return c;
}

const ModelKind kFull[] = {ModelKind::FullHermitian, ModelKind::FullNonHermitian};

Outcome equilibrium_energy() {
  double worst = 0.0;
  double slowest = 0.0;
  std::string where;
  for (ModelKind k : kFull) {
    for (const NamedInitial& p : standard_initials()) {
      const Run& r = cache().get(k, p.ic);
      const double gap = std::abs(r.records.back().energy - kTargetEnergy);
      slowest = std::max(slowest, r.seconds);
      if (gap > worst) {
        worst = gap;
        where = to_string(k) + " " + p.label;
      }
    }
  }
  return {worst <= 1e-3 && slowest < 10.0,
          "worst |E(t=5pi) - 1.0819764| = " + fmt(worst) + " (" + where +
              ", limit 1e-3); slowest run " + fmt(slowest, 2) + " s"};
}

Outcome caldeira_leggett_failure() {
  double smallest = 1e300;
  std::string where;
  for (const NamedInitial& p : standard_initials()) {
    const double gap =
        std::abs(cache().get(ModelKind::CaldeiraLeggett, p.ic).records.back().energy - kTargetEnergy);
    if (gap < smallest) {
      smallest = gap;
      where = p.label;
    }
  }
  return {smallest > 0.01,
          "smallest |E(t=5pi) - 1.0819764| = " + fmt(smallest) + " (" + where + ", must exceed 1e-2)"};
}

Outcome second_law() {
  double worst = 0.0;
  std::string where = "none";
  for (ModelKind k : kFull) {
    for (const NamedInitial& p : standard_initials()) {
      for (const ThermoRecord& r : cache().get(k, p.ic).records) {
        if (-r.dsp_dt > worst) {
          worst = -r.dsp_dt;
          where = to_string(k) + " " + p.label;
        }
      }
    }
  }
  return {worst <= 1e-9, "min dSp/dt = " + fmt(-worst) + " (" + where + ", limit -1e-9)"};
}

Outcome entropy_flow_signs() {
  bool ok = true;
  std::ostringstream os;
  for (ModelKind k : kFull) {
    os << to_string(k) << ":";
    for (int f = 1; f <= 4; ++f) {
      const double dsf = cache().get(k, MixedPowerLaw{double(f)}).records.front().dsf_dt;
      ok = ok && (f <= 2 ? dsf < 0.0 : dsf > 0.0);
      os << " f=" << f << " " << fmt(dsf, 2);
    }
    os << "; ";
  }
  return {ok, "dSf/dt at t=0: " + os.str()};
}

Outcome positivity_dichotomy() {
  const double dt = kPi / 1000.0;
  bool ok = true;
  std::ostringstream os;
  for (ModelKind k : {ModelKind::MomentumOnlyHermitian, ModelKind::MomentumOnlyNonHermitian,
                      ModelKind::CaldeiraLeggett, ModelKind::FullHermitian,
                      ModelKind::FullNonHermitian}) {
    int steps_with_negative = 0;
    for (int s = 2; s <= 4; ++s) {
      for (const ThermoRecord& r : cache().get(k, PureLevel{s}, 0.0, dt).records) {
        if (r.neg_count > 0) ++steps_with_negative;
      }
    }
    const bool full = k == ModelKind::FullHermitian || k == ModelKind::FullNonHermitian;
    ok = ok && (full ? steps_with_negative == 0 : steps_with_negative >= 1);
    os << to_string(k) << " " << steps_with_negative << "; ";
  }
  return {ok, "steps with negative eigenvalues over s=2..4: " + os.str()};
}

Outcome lindblad_region() {
  const cli::LindbladSection grid;
  int cells = 0;
  int mismatches = 0;
  int disagreements = 0;
  for (double xi : grid.xi) {
    for (double bp : grid.beta_p) {
      for (double bq : grid.beta_q) {
        OscillatorModel m;
        m.temperature = m.hbar * m.omega / (2.0 * m.kb * xi);
        m.beta_p = bp;
        m.beta_q = bq;
        bool verdict[2];
        for (bool nonherm : {false, true}) {
          const LindbladReport r = lindblad_region_check(m, nonherm, kDefaultChoiStep);
          verdict[nonherm] = r.cond1 && r.cond2 && r.cond3;
          if (verdict[nonherm] != (r.choi_min_eigenvalue >= -1e-9)) ++mismatches;
        }
        if (verdict[0] != verdict[1]) ++disagreements;
        ++cells;
      }
    }
  }
  const double x1 = lindblad_x1(2.0);
  const double x2 = lindblad_x2(2.0);
  double product = 0.0;
  for (double xi : grid.xi) product = std::max(product, std::abs(lindblad_x1(xi) * lindblad_x2(xi) - 1.0));
  const bool slopes = std::abs(x1 - kBoundaryX1) <= 1e-5 && std::abs(x2 - kBoundaryX2) <= 1e-5;
  return {mismatches == 0 && disagreements == 0 && slopes && product <= 1e-10,
          std::to_string(cells) + " cells, " + std::to_string(mismatches) +
              " analytic/Choi mismatches, " + std::to_string(disagreements) +
              " Hermitian/non-Hermitian disagreements; x1(2) = " + fmt(x1, 6) +
              ", x2(2) = " + fmt(x2, 6) + ", max |x1 x2 - 1| = " + fmt(product, 1)};
}

Outcome qome_equivalence() {
  double worst = 0.0;
  for (double xi : {0.25, 0.5, 1.0, 2.0}) {
    for (double beta : {0.05, 0.2, 0.8}) {
      OscillatorModel m;
      m.temperature = 1.0 / (2.0 * xi);
      m.beta_p = beta;
      m.beta_q = beta;
      const ComplexMatrix a = build_liouvillian(m, ModelKind::FullHermitian).matrix();
      const ComplexMatrix b = build_qome(m, qome_mapping(m)).matrix();
      worst = std::max(worst, (a - b).norm() / a.norm());
    }
  }
  return {worst <= 1e-12, "max relative Frobenius distance " + fmt(worst, 2) + " (limit 1e-12)"};
}

Outcome friction_oracles() {
  double route = 0.0;
  double cert = 0.0;
  for (double xi : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
    OscillatorModel m;
    m.temperature = 1.0 / (2.0 * xi);
    const SpectralSystem sys = oscillator_system(m);
    const double kt = m.kt();
    for (FrictionChannel ch : {FrictionChannel::Momentum, FrictionChannel::Position}) {
      const ComplexMatrix s = hermitian_friction(sys, kt, ch);
      const ComplexMatrix y = hermitian_friction_sylvester(sys, kt, ch);
      route = std::max(route, (s - y).norm() / s.norm());
      if (xi <= 0.2) {
        const ComplexMatrix b = hermitian_friction_bernoulli(sys, kt, ch, 8);
        route = std::max({route, (b - s).norm() / s.norm(), (b - y).norm() / y.norm()});
      }
      cert = std::max(cert, stationarity_residual_hermitian(sys, kt, ch, s));
      cert = std::max(cert, stationarity_residual_nonhermitian(sys, kt, ch,
                                                               nonhermitian_friction(sys, kt, ch)));
    }
  }
  return {route <= 1e-6 && cert <= 1e-10,
          "max route disagreement " + fmt(route, 2) + " (limit 1e-6), max stationarity residual " +
              fmt(cert, 2) + " (limit 1e-10)"};
}

Outcome equipartition() {
  const OscillatorModel m;  // d = 16, xi = 0.5
  const SpectralSystem sys = oscillator_system(m);
  const ComplexMatrix tp = hermitian_friction(sys, m.kt(), FrictionChannel::Momentum);
  const ComplexMatrix tq = hermitian_friction(sys, m.kt(), FrictionChannel::Position);
  const EquipartitionResiduals eq = equipartition_residuals(sys, m.kt(), gibbs_state(m), tp, tq);
  const EquipartitionResiduals gs =
      equipartition_residuals(sys, m.kt(), initial_density(PureLevel{1}, m.dim), tp, tq);
  const double eq_worst = std::max(std::abs(eq.kinetic), std::abs(eq.potential));
  return {eq_worst <= 1e-8 && std::abs(gs.kinetic - kTargetKinetic) <= 1e-6,
          "residuals at equilibrium " + fmt(eq_worst, 2) + " (limit 1e-8); kinetic at ground state " +
              fmt(gs.kinetic, 7)};
}

Outcome first_law() {
  double worst = 0.0;
  for (double force : {0.0, 0.1}) {
    for (ModelKind k : {ModelKind::FullHermitian, ModelKind::FullNonHermitian,
                        ModelKind::CaldeiraLeggett}) {
      for (const NamedInitial& p : standard_initials()) {
        if (force != 0.0 && p.label != "f=1" && p.label != "s=2") continue;
        for (const ThermoRecord& r : cache().get(k, p.ic, force).records) {
          worst = std::max(worst, std::abs(r.de_dt - r.work_rate - r.heat_rate));
        }
      }
    }
  }
  return {worst <= 1e-9, "max |dE/dt - W - Q| = " + fmt(worst, 2) + " (limit 1e-9, f in {0, 0.1})"};
}

Outcome free_energy_monotone() {
  const OscillatorModel m;
  const double floor = -m.kt() * std::log(partition_function(m));
  double rise = 0.0;
  double below = 0.0;
  for (ModelKind k : kFull) {
    for (const NamedInitial& p : standard_initials()) {
      const std::vector<ThermoRecord>& recs = cache().get(k, p.ic).records;
      for (std::size_t i = 0; i < recs.size(); ++i) {
        if (i > 0) rise = std::max(rise, recs[i].free_energy - recs[i - 1].free_energy);
        below = std::max(below, floor - recs[i].free_energy);
      }
    }
  }
  const ThermoContext ctx = make_thermo_context(m, build_liouvillian(m, ModelKind::FullHermitian));
  const double feq = free_energy(ctx, gibbs_state(m));
  return {rise <= 1e-10 && below <= 0.0 && std::abs(feq - kTargetFreeEnergy) <= 1e-6,
          "max step increase " + fmt(rise, 2) + " (limit 1e-10), max undershoot " + fmt(below, 2) +
              ", F_eq = " + fmt(feq, 7)};
}

Outcome classical_module() {
  bool ok = true;
  double slowest = 0.0;
  std::ostringstream os;
  for (auto [bp, bq] : {std::pair{2.0, 0.0}, std::pair{0.0, 2.0}, std::pair{1.0, 1.0}}) {
    ClassicalParams c;  // dt 0.0025, 4000 steps, 5000 trajectories
    c.beta_p = bp;
    c.beta_q = bq;
    c.seed = 2026;
    const auto t0 = std::chrono::steady_clock::now();
    const EnsembleResult r = simulate_ensemble(c);
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    const StationaryResiduals s = stationary_check(r.stationary, c);
    const Residual balance = energy_balance_check(r, c).whole_run;
    ok = ok && s.p2.within(3.0) && s.q2.within(3.0) && balance.within(3.0);
    auto z = [](const Residual& x) { return fmt(x.value / x.std_error, 2); };
    os << "(" << bp << "," << bq << "): z_p2 " << z(s.p2) << " z_q2 " << z(s.q2) << " z_first_law "
       << z(balance) << "; ";
  }
  ok = ok && slowest < 60.0;
  return {ok, os.str() + "slowest " + fmt(slowest, 2) + " s"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  RunConfig q;
  q.kind = ModelKind::FullNonHermitian;
  q.initial = PureLevel{3};
  std::ostringstream a, b;
  cli::write_trajectory_csv(a, q, cli::run_quantum(q).records);
  cli::write_trajectory_csv(b, q, cli::run_quantum(q).records);
  const bool quantum = a.str() == b.str();

  RunConfig c;
  c.model.beta_p = 1.0;
  c.model.beta_q = 1.0;
  c.classical.trajectories = 1000;
  c.seed = 99;
  const fs::path dir = fs::temp_directory_path() / "qthermo_acceptance_determinism";
  fs::remove_all(dir);
  std::ostringstream sink;
  cli::classical_run(c, dir / "a", sink);
  cli::classical_run(c, dir / "b", sink);
  const std::string ca = slurp(dir / "a" / "classical_run.csv");
  const bool classical = !ca.empty() && ca == slurp(dir / "b" / "classical_run.csv");
  fs::remove_all(dir);
  return {quantum && classical, std::string("quantum CSV ") + (quantum ? "identical" : "differs") +
                                    ", classical CSV " + (classical ? "identical" : "differs")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  qthermo::set_warning_sink([](std::string_view) {});
  const std::vector<Criterion> all = {
      {1, "equilibrium energy", equilibrium_energy},
      {2, "Caldeira-Leggett thermodynamic failure", caldeira_leggett_failure},
      {3, "second law", second_law},
      {4, "entropy-flow signs", entropy_flow_signs},
      {5, "positivity dichotomy", positivity_dichotomy},
      {6, "Lindblad region", lindblad_region},
      {7, "QOME equivalence", qome_equivalence},
      {8, "friction-operator oracles", friction_oracles},
      {9, "quantum equipartition", equipartition},
      {10, "first law", first_law},
      {11, "free energy", free_energy_monotone},
      {12, "classical module", classical_module},
      {13, "determinism", determinism},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const Criterion& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
