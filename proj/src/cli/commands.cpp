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

#include "qthermo/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "qthermo/diagnostics.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/friction.hpp"
#include "qthermo/langevin.hpp"
#include "qthermo/liouvillian.hpp"
#include "qthermo/propagator.hpp"

namespace qthermo::cli {

namespace fs = std::filesystem;

namespace {

// Runs body(i) for i in [0, n) on up to `threads` workers; results must be
// written to per-index slots by the caller.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::max<std::size_t>(1, std::min(workers, n));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

fs::path output_path(const RunConfig& config, const fs::path& out_dir, const char* fallback) {
  fs::create_directories(out_dir);
  return out_dir / (config.output.empty() ? fs::path(fallback) : fs::path(config.output));
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError(path.string() + ": cannot open output file");
  return os;
}

std::string fmt(double v, int precision = 10) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

// Counts warnings instead of printing them while alive.
class WarningCounter {
 public:
  WarningCounter()
      : previous_(set_warning_sink([this](std::string_view) { ++count_; })) {}
  ~WarningCounter() { set_warning_sink(previous_); }
  int count() const { return count_.load(); }

 private:
  std::atomic<int> count_{0};
  WarningSink previous_;
};

OscillatorModel model_at_xi(const RunConfig& config, double xi, double beta_p, double beta_q) {
  OscillatorModel m = config.model;
  m.temperature = m.hbar * m.omega / (2.0 * xi * m.kb);
  m.beta_p = beta_p;
  m.beta_q = beta_q;
  return m;
}

}  // namespace

QuantumRunResult run_quantum(const RunConfig& config) {
  const OscillatorModel& model = config.model;
  const Superoperator generator = build_liouvillian(model, config.kind);
  const ComplexMatrix rho_eq = gibbs_state(model);
  const ComplexMatrix rho0 = initial_density(config.initial, model.dim, rho_eq);
  const Trajectory traj = evolve(generator, rho0, config.dt, config.steps);
  const ThermoContext ctx = make_thermo_context(model, generator);

  QuantumRunResult result;
  result.records = analyze_trajectory(ctx, traj);
  QuantumRunSummary& s = result.summary;
  s.final_energy = result.records.back().energy;
  s.equilibrium_energy = trace_product(ctx.hamiltonian, rho_eq).real();
  for (const ThermoRecord& r : result.records) {
    s.max_negative_dsp = std::max(s.max_negative_dsp, -r.dsp_dt);
    if (r.neg_count > 0) ++s.negative_eigenvalue_steps;
    if (r.clamped > 0) ++s.clamped_steps;
    s.max_first_law_residual =
        std::max(s.max_first_law_residual, std::abs(r.de_dt - r.work_rate - r.heat_rate));
  }
  return result;
}

void write_trajectory_csv(std::ostream& os, const RunConfig& config,
                          const std::vector<ThermoRecord>& records) {
  CsvWriter csv(os, config.emit_precision);
  csv.comment("config: " + config_to_json(config));
  csv.header({"t", "energy", "entropy", "ds_dt", "dsp_dt", "dsf_dt", "heat_rate", "work_rate",
              "free_energy", "rel_entropy", "min_eig", "neg_count", "purity", "trace_err",
              "clamped"});
  for (const ThermoRecord& r : records) {
    csv.cell(r.t).cell(r.energy).cell(r.entropy).cell(r.ds_dt).cell(r.dsp_dt).cell(r.dsf_dt);
    csv.cell(r.heat_rate).cell(r.work_rate).cell(r.free_energy).cell(r.rel_entropy);
    csv.cell(r.min_eig).cell(r.neg_count).cell(r.purity).cell(r.trace_err).cell(r.clamped);
    csv.end_row();
  }
}

int quantum_run(const RunConfig& config, const fs::path& out_dir, std::ostream& out) {
  const QuantumRunResult result = run_quantum(config);
  const fs::path path = output_path(config, out_dir, "quantum_run.csv");
  std::ofstream os = open_output(path);
  write_trajectory_csv(os, config, result.records);
  const QuantumRunSummary& s = result.summary;
  out << "model = " << to_string(config.kind) << '\n'
      << "output = " << path.string() << '\n'
      << "final_energy = " << fmt(s.final_energy) << '\n'
      << "equilibrium_energy = " << fmt(s.equilibrium_energy) << '\n'
      << "energy_gap = " << fmt(std::abs(s.final_energy - s.equilibrium_energy), 4) << '\n'
      << "max_negative_dsp_dt = " << fmt(s.max_negative_dsp, 4) << '\n'
      << "negative_eigenvalue_steps = " << s.negative_eigenvalue_steps << '\n'
      << "clamped_steps = " << s.clamped_steps << '\n';
  return kExitOk;
}

int lindblad_check(const RunConfig& config, const fs::path& out_dir, std::ostream& out) {
  const LindbladSection& l = config.lindblad;
  struct Cell {
    double xi, beta_p, beta_q;
  };
  std::vector<Cell> cells;
  for (double xi : l.xi) {
    for (double bp : l.beta_p) {
      for (double bq : l.beta_q) cells.push_back({xi, bp, bq});
    }
  }
  std::vector<bool> kinds;
  if (l.kinds != RegionKinds::NonHermitian) kinds.push_back(false);
  if (l.kinds != RegionKinds::Hermitian) kinds.push_back(true);

  std::vector<std::vector<LindbladReport>> reports(kinds.size(), std::vector<LindbladReport>(cells.size()));
  int step_warnings = 0;
  {
    WarningCounter counter;
    parallel_for(cells.size() * kinds.size(), 0, [&](std::size_t idx) {
      const std::size_t k = idx / cells.size();
      const Cell& c = cells[idx % cells.size()];
      const OscillatorModel m = model_at_xi(config, c.xi, c.beta_p, c.beta_q);
      std::optional<double> dt;
      if (l.choi) dt = l.choi_dt;
      reports[k][idx % cells.size()] = lindblad_region_check(m, kinds[k], dt);
    });
    step_warnings = counter.count();
  }

  fs::create_directories(out_dir);
  int mismatches = 0;
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    const fs::path path = out_dir / (kinds[k] ? "lindblad_nonhermitian.csv" : "lindblad_hermitian.csv");
    std::ofstream os = open_output(path);
    CsvWriter csv(os, config.emit_precision);
    csv.comment("config: " + config_to_json(config));
    csv.header({"xi", "beta_p", "beta_q", "D_pp", "D_qq", "lambda", "mu", "x", "x1", "x2", "cond1",
                "cond2", "cond3", "choi_min_eig"});
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const LindbladReport& r = reports[k][i];
      csv.cell(cells[i].xi).cell(cells[i].beta_p).cell(cells[i].beta_q).cell(r.d_pp).cell(r.d_qq);
      csv.cell(r.lambda).cell(r.mu).cell(r.x).cell(r.x1).cell(r.x2);
      csv.cell(r.cond1).cell(r.cond2).cell(r.cond3).cell(r.choi_min_eigenvalue);
      csv.end_row();
      const bool analytic = r.cond1 && r.cond2 && r.cond3;
      if (l.choi && analytic != (r.choi_min_eigenvalue >= -1e-9)) ++mismatches;
    }
    out << "output = " << path.string() << '\n';
  }

  {
    const fs::path path = out_dir / "lindblad_boundaries.csv";
    std::ofstream os = open_output(path);
    CsvWriter csv(os, config.emit_precision);
    csv.comment("Y = x1 X and Y = x2 X with Y = beta_p, X = m^2 w^2 beta_q");
    csv.header({"xi", "X", "Y_lower", "Y_upper"});
    for (double xi : l.xi) {
      const double x1 = lindblad_x1(xi);
      const double x2 = lindblad_x2(xi);
      for (int i = 0; i < l.boundary_samples; ++i) {
        const double x = l.boundary_x_max * i / (l.boundary_samples - 1);
        csv.cell(xi).cell(x).cell(x1 * x).cell(x2 * x);
        csv.end_row();
      }
    }
    out << "output = " << path.string() << '\n';
  }

  int cond3_disagreements = 0;
  if (kinds.size() == 2) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (reports[0][i].cond3 != reports[1][i].cond3) ++cond3_disagreements;
    }
  }
  out << "cells = " << cells.size() << '\n';
  if (l.choi) out << "analytic_vs_choi_mismatches = " << mismatches << '\n';
  if (kinds.size() == 2) out << "hermitian_vs_nonhermitian_cond3_disagreements = " << cond3_disagreements << '\n';
  if (step_warnings > 0) out << "choi_steps_with_norm_dt_above_1 = " << step_warnings << '\n';
  return kExitOk;
}

int qome_compare(const RunConfig& config, std::ostream& out) {
  const QomeParams q = qome_mapping(config.model);
  const Superoperator full = build_liouvillian(config.model, ModelKind::FullHermitian);
  const Superoperator qome = build_qome(config.model, q);
  const double norm = full.matrix().norm();
  const double distance = (full.matrix() - qome.matrix()).norm();
  const double relative = distance / norm;
  out << "gamma0 = " << fmt(q.gamma0) << '\n'
      << "nbar = " << fmt(q.nbar) << '\n'
      << "generator_norm = " << fmt(norm) << '\n'
      << "distance = " << fmt(distance, 4) << '\n'
      << "relative_distance = " << fmt(relative, 4) << '\n';
  return relative <= 1e-12 ? kExitOk : kExitNumerical;
}

int classical_run(const RunConfig& config, const fs::path& out_dir, std::ostream& out) {
  const ClassicalParams params = classical_params(config);
  const EnsembleResult result = simulate_ensemble(params);

  const fs::path path = output_path(config, out_dir, "classical_run.csv");
  {
    std::ofstream os = open_output(path);
    CsvWriter csv(os, config.emit_precision);
    csv.comment("config: " + config_to_json(config));
    csv.header({"t", "mean_E", "mean_p2_over_m", "mean_mw2q2", "first_law_residual", "mean_E_se",
                "mean_p2_over_m_se", "mean_mw2q2_se", "first_law_residual_se", "de_dt",
                "work_rate", "heat_p", "heat_q"});
    for (const WindowRecord& w : result.windows) {
      csv.cell(w.t_end).cell(w.energy_end.mean).cell(w.p2_over_m.mean).cell(w.mw2_q2.mean);
      csv.cell(w.residual.mean).cell(w.energy_end.stderr_of_mean());
      csv.cell(w.p2_over_m.stderr_of_mean()).cell(w.mw2_q2.stderr_of_mean());
      csv.cell(w.residual.stderr_of_mean()).cell(w.de_dt.mean).cell(w.work_rate.mean);
      csv.cell(w.heat_p.mean).cell(w.heat_q.mean);
      csv.end_row();
    }
  }
  out << "output = " << path.string() << '\n'
      << "beta_q_scaled = " << fmt(params.beta_q_scaled()) << '\n'
      << "burn_in_steps = " << result.burn_in_steps << '\n';
  const EnergyBalance balance = energy_balance_check(result, params);
  out << "first_law_residual = " << fmt(balance.whole_run.value, 4) << " +- "
      << fmt(balance.whole_run.std_error, 4) << '\n';
  try {
    const StationaryResiduals r = stationary_check(result.stationary, params);
    auto line = [&](const char* name, const Residual& x) {
      out << name << " = " << fmt(x.value, 4) << " +- " << fmt(x.std_error, 4)
          << (x.within(3.0) ? "" : "  (outside 3 sigma)") << '\n';
    };
    line("residual_p2", r.p2);
    line("residual_q2", r.q2);
    line("residual_equipartition_r", r.equi_r);
    line("residual_mean_q", r.mean_q);
  } catch (const InsufficientSamples& e) {
    out << "stationary_check = " << e.what() << '\n'
        << "hint: burn-in is 10 / (beta_p + m^2 w^2 beta_q) time units; raise classical.steps, "
           "the friction coefficients or set classical.burn_in_steps\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int sweep(const RunConfig& config, const fs::path& out_dir, std::ostream& out) {
  const SweepSection& s = config.sweep;
  struct Cell {
    RunConfig config;
    std::string label;
    nlohmann::json value;
    std::string error;
    int code = kExitOk;
  };
  std::vector<Cell> cells;
  if (s.axis == SweepAxis::Model) {
    for (const std::string& name : s.models) {
      Cell c{config, {}, name, {}, kExitOk};
      c.config.kind = *parse_model_kind(name);
      c.label = "model_" + to_string(c.config.kind);
      cells.push_back(std::move(c));
    }
  } else {
    for (double v : s.values) {
      Cell c{config, {}, v, {}, kExitOk};
      if (s.axis == SweepAxis::F) {
        c.config.initial = MixedPowerLaw{v};
        c.label = "f_" + fmt(v, 6);
      } else {
        c.config.initial = PureLevel{static_cast<int>(std::lround(v))};
        c.label = "s_" + std::to_string(std::lround(v));
      }
      cells.push_back(std::move(c));
    }
  }
  if (cells.empty()) throw ConfigError("sweep: no values given for axis");
  fs::create_directories(out_dir);
  for (Cell& c : cells) c.config.output = c.label + ".csv";

  parallel_for(cells.size(), s.threads, [&](std::size_t i) {
    Cell& c = cells[i];
    try {
      if (s.axis == SweepAxis::S) {
        const double v = c.value.get<double>();
        if (v != std::round(v) || v < 1 || v > c.config.model.dim) {
          throw ConfigError("pure level must be an integer in [1, dim]");
        }
      }
      std::ostringstream sink;
      quantum_run(c.config, out_dir, sink);
    } catch (const ConfigError& e) {
      c.error = e.what();
      c.code = kExitConfig;
    } catch (const InvalidModel& e) {
      c.error = e.what();
      c.code = kExitConfig;
    } catch (const std::exception& e) {
      c.error = e.what();
      c.code = kExitNumerical;
    }
  });

  nlohmann::json manifest;
  manifest["axis"] = s.axis == SweepAxis::Model ? "model" : (s.axis == SweepAxis::F ? "f" : "s");
  manifest["cells"] = nlohmann::json::array();
  manifest["files"] = nlohmann::json::object();
  int failures = 0;
  for (const Cell& c : cells) {
    const std::string hash = config_hash(c.config);
    nlohmann::json entry = {{"value", c.value}, {"config_hash", hash}, {"output", c.config.output}};
    if (c.error.empty()) {
      entry["status"] = "ok";
      manifest["files"][hash] = c.config.output;
    } else {
      entry["status"] = "error";
      entry["error"] = c.error;
      ++failures;
    }
    manifest["cells"].push_back(entry);
    out << c.label << " = " << (c.error.empty() ? "ok" : "error: " + c.error) << '\n';
  }
  {
    std::ofstream os = open_output(out_dir / "manifest.json");
    os << manifest.dump(2) << '\n';
  }
  out << "manifest = " << (out_dir / "manifest.json").string() << '\n';
  if (failures == 0) return kExitOk;
  return failures == static_cast<int>(cells.size()) && cells.size() == 1 ? cells[0].code : kExitPartial;
}

int friction_dump(const RunConfig& config, const fs::path& out_dir, std::ostream& out) {
  const FrictionSection& f = config.friction;
  const SpectralSystem sys = oscillator_system(config.model);
  const double kt = config.model.kt();
  ComplexMatrix op;
  std::string name;
  if (f.hermitian) {
    switch (f.route) {
      case FrictionRoute::Spectral: op = hermitian_friction(sys, kt, f.channel); break;
      case FrictionRoute::Sylvester: op = hermitian_friction_sylvester(sys, kt, f.channel); break;
      case FrictionRoute::Bernoulli:
        op = hermitian_friction_bernoulli(sys, kt, f.channel, f.order);
        break;
      case FrictionRoute::ClosedForm:
        throw ConfigError("friction.route: closed_form applies to non-Hermitian operators only");
    }
  } else {
    switch (f.route) {
      case FrictionRoute::Spectral: op = nonhermitian_friction(sys, kt, f.channel); break;
      case FrictionRoute::ClosedForm: op = nonhermitian_friction_closed_form(sys, kt, f.channel); break;
      default:
        throw ConfigError("friction.route: non-Hermitian operators support spectral and closed_form");
    }
  }
  const double residual =
      f.hermitian ? stationarity_residual_hermitian(sys, kt, f.channel, op)
                  : stationarity_residual_nonhermitian(sys, kt, f.channel, op);

  const fs::path path = output_path(config, out_dir, "friction.csv");
  std::ofstream os = open_output(path);
  CsvWriter csv(os, config.emit_precision);
  csv.comment("config: " + config_to_json(config));
  os << "row";
  for (Eigen::Index c = 0; c < op.cols(); ++c) os << ",c" << c << "_re,c" << c << "_im";
  os << '\n';
  for (Eigen::Index r = 0; r < op.rows(); ++r) {
    csv.cell(static_cast<long long>(r));
    for (Eigen::Index c = 0; c < op.cols(); ++c) csv.cell(op(r, c).real()).cell(op(r, c).imag());
    csv.end_row();
  }
  out << "output = " << path.string() << '\n'
      << "stationarity_residual = " << fmt(residual, 4) << '\n';
  return kExitOk;
}

int main(int argc, char** argv) {
  CLI::App app{"Open-system thermodynamics of the damped quantum oscillator"};
  app.require_subcommand(1);

  struct Options {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> model;
    std::optional<double> dt;
    std::optional<int> steps;
    std::optional<int> dim;
  } opts;

  const char* names[] = {"quantum-run", "lindblad-check", "qome-compare",
                         "classical-run", "sweep",        "friction-dump"};
  const char* help[] = {"propagate one model and write per-step thermodynamics",
                        "Lindblad-region and complete-positivity grid",
                        "compare the mapped optical master equation with FullHermitian",
                        "classical Langevin ensemble statistics",
                        "run quantum-run over a model, f or s axis",
                        "write a friction operator as CSV"};
  std::vector<CLI::App*> subs;
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config", opts.config, "JSON configuration file");
    sub->add_option("--out", opts.out, "output directory");
    sub->add_option("--seed", opts.seed, "RNG seed (classical)");
    sub->add_option("--model", opts.model, "model kind, e.g. FullHermitian");
    sub->add_option("--dt", opts.dt, "time step");
    sub->add_option("--steps", opts.steps, "number of steps");
    sub->add_option("--dim", opts.dim, "truncation dimension");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::string command;
  for (int i = 0; i < 6; ++i) {
    if (subs[i]->parsed()) command = names[i];
  }

  try {
    RunConfig cfg = opts.config.empty() ? RunConfig{} : load_config(opts.config);
    const bool classical = command == "classical-run";
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.model) {
      const auto kind = parse_model_kind(*opts.model);
      if (!kind) throw ConfigError("--model: unknown model '" + *opts.model + "'");
      cfg.kind = *kind;
    }
    if (opts.dt) (classical ? cfg.classical.dt : cfg.dt) = *opts.dt;
    if (opts.steps) (classical ? cfg.classical.steps : cfg.steps) = *opts.steps;
    if (opts.dim) cfg.model.dim = *opts.dim;
    // Re-validate after overrides.
    cfg = parse_config(config_to_json(cfg), "<effective config>");

    const fs::path out_dir = opts.out;
    if (command == "quantum-run") return quantum_run(cfg, out_dir, std::cout);
    if (command == "lindblad-check") return lindblad_check(cfg, out_dir, std::cout);
    if (command == "qome-compare") return qome_compare(cfg, std::cout);
    if (command == "classical-run") return classical_run(cfg, out_dir, std::cout);
    if (command == "sweep") return sweep(cfg, out_dir, std::cout);
    if (command == "friction-dump") return friction_dump(cfg, out_dir, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidModel& e) {
    std::cerr << "invalid model: " << e.what() << '\n';
    return kExitConfig;
  } catch (const OffBisector& e) {
    std::cerr << "off bisector: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace qthermo::cli
