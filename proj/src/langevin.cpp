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

#include "qthermo/langevin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "qthermo/diagnostics.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/simd/kernels.hpp"

namespace qthermo {

namespace {

constexpr std::size_t kBlockLanes = 64;

simd::EmCoefficients em_coefficients(const ClassicalParams& c) {
  const double k = c.mass * c.omega * c.omega;  // V''
  simd::EmCoefficients e;
  e.pp = 1.0 - c.beta_p * c.dt;
  e.pq = -k * c.dt;
  e.p0 = c.force * c.dt;
  e.p_noise = std::sqrt(2.0 * c.kt() * c.beta_p * c.mass * c.dt);
  e.qq = 1.0 - c.beta_q * c.mass * k * c.dt;
  e.qp = c.dt / c.mass;
  e.q_noise = std::sqrt(2.0 * c.kt() * c.beta_q * c.mass * c.dt);
  return e;
}

// Per-lane integrals over one window, left-point rule.
struct LaneWindow {
  double e_start = 0.0;
  double work = 0.0;
  double heat_p = 0.0;
  double heat_q = 0.0;
  double p2 = 0.0;
  double q2 = 0.0;
  int steps = 0;

  void reset(double e) { *this = LaneWindow{}; e_start = e; }
};

struct BlockResult {
  EnsembleStats stationary;
  std::vector<WindowRecord> windows;
  WindowRecord whole_run;
};

class BlockRunner {
 public:
  BlockRunner(const ClassicalParams& params, int burn_in, std::size_t n_windows)
      : c_(params), burn_in_(burn_in), n_windows_(n_windows), coeff_(em_coefficients(params)) {}

  BlockResult run(std::size_t first, std::size_t lanes) const {
    const double k = c_.mass * c_.omega * c_.omega;
    const double kt = c_.kt();
    std::vector<std::mt19937_64> engines;
    std::vector<std::normal_distribution<double>> normals(lanes);
    engines.reserve(lanes);
    for (std::size_t i = 0; i < lanes; ++i) {
      const std::uint64_t index = first + i;
      std::seed_seq seq{static_cast<std::uint32_t>(c_.seed), static_cast<std::uint32_t>(c_.seed >> 32),
                        static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
      engines.emplace_back(seq);
    }

    std::vector<double> q(lanes, 0.0), p(lanes, 0.0), np(lanes), nq(lanes);
    if (c_.initial != InitialEnsemble::Cold) {
      const double temp_scale = c_.initial == InitialEnsemble::Hot ? 4.0 : 1.0;
      const double sp = std::sqrt(c_.mass * kt * temp_scale);
      const double sq = std::sqrt(kt * temp_scale / k);
      for (std::size_t i = 0; i < lanes; ++i) {
        p[i] = sp * normals[i](engines[i]);
        q[i] = c_.shift() + sq * normals[i](engines[i]);
      }
    }

    auto energy = [&](std::size_t i) { return p[i] * p[i] / (2.0 * c_.mass) + 0.5 * k * q[i] * q[i]; };

    std::vector<double> sum_p(lanes, 0.0), sum_q(lanes, 0.0), sum_pp(lanes, 0.0), sum_qq(lanes, 0.0);
    std::vector<LaneWindow> win(lanes), total(lanes);
    for (std::size_t i = 0; i < lanes; ++i) {
      win[i].reset(energy(i));
      total[i].reset(energy(i));
    }

    BlockResult out;
    out.windows.resize(n_windows_);
    std::size_t window = 0;
    double window_start = 0.0;

    for (int step = 1; step <= c_.n_steps; ++step) {
      for (std::size_t i = 0; i < lanes; ++i) {
        const double pv = p[i];
        const double qv = q[i];
        const double vp = k * qv;
        const double work = c_.force * pv / c_.mass;
        const double hp = 2.0 * c_.beta_p * (0.5 * kt - pv * pv / (2.0 * c_.mass));
        const double hq = c_.beta_q * (kt * c_.mass * k - c_.mass * vp * vp);
        for (LaneWindow* w : {&win[i], &total[i]}) {
          w->work += work;
          w->heat_p += hp;
          w->heat_q += hq;
          w->p2 += pv * pv / c_.mass;
          w->q2 += k * qv * qv;
          ++w->steps;
        }
        np[i] = normals[i](engines[i]);
        nq[i] = normals[i](engines[i]);
      }
      simd::em_step(q.data(), p.data(), np.data(), nq.data(), lanes, coeff_);
      if (step > burn_in_) {
        simd::accumulate_moments(q.data(), p.data(), lanes, sum_p.data(), sum_q.data(),
                                 sum_pp.data(), sum_qq.data());
      }
      const bool window_done = step % c_.window_steps == 0 || step == c_.n_steps;
      if (window_done) {
        const double t_end = step * c_.dt;
        WindowRecord& rec = out.windows[window];
        rec.t_start = window_start;
        rec.t_end = t_end;
        for (std::size_t i = 0; i < lanes; ++i) {
          fold_window(rec, win[i], energy(i), c_.dt);
          win[i].reset(energy(i));
        }
        ++window;
        window_start = t_end;
      }
    }

    out.whole_run.t_start = 0.0;
    out.whole_run.t_end = c_.n_steps * c_.dt;
    for (std::size_t i = 0; i < lanes; ++i) fold_window(out.whole_run, total[i], energy(i), c_.dt);

    const auto samples = static_cast<std::uint64_t>(c_.n_steps - burn_in_);
    out.stationary.samples_per_trajectory = samples;
    if (samples > 0) {
      const double inv = 1.0 / static_cast<double>(samples);
      const double s = c_.shift();
      for (std::size_t i = 0; i < lanes; ++i) {
        const double mp = sum_p[i] * inv;
        const double mq = sum_q[i] * inv;
        const double mpp = sum_pp[i] * inv;
        const double mqq = sum_qq[i] * inv;
        const double centered = mqq - 2.0 * s * mq + s * s;  // <(q - shift)^2>
        out.stationary.p.add(mp);
        out.stationary.q.add(mq);
        out.stationary.p2_over_m.add(mpp / c_.mass);
        out.stationary.mw2_q2.add(k * centered);
        out.stationary.m_vprime2.add(c_.mass * k * k * centered);
        out.stationary.energy.add(mpp / (2.0 * c_.mass) + 0.5 * k * mqq);
      }
    }
    return out;
  }

 private:
  static void fold_window(WindowRecord& rec, const LaneWindow& w, double e_end, double dt) {
    const double span = w.steps * dt;
    const double n = static_cast<double>(w.steps);
    const double de = (e_end - w.e_start) / span;
    const double work = w.work / n;
    const double hp = w.heat_p / n;
    const double hq = w.heat_q / n;
    rec.energy_end.add(e_end);
    rec.p2_over_m.add(w.p2 / n);
    rec.mw2_q2.add(w.q2 / n);
    rec.de_dt.add(de);
    rec.work_rate.add(work);
    rec.heat_p.add(hp);
    rec.heat_q.add(hq);
    rec.residual.add(de - work - hp - hq);
  }

  const ClassicalParams& c_;
  int burn_in_;
  std::size_t n_windows_;
  simd::EmCoefficients coeff_;
};

}  // namespace

void ClassicalParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidModel(std::string(name) + " must be positive and finite");
    }
  };
  positive(mass, "mass");
  positive(omega, "omega");
  positive(kb, "kb");
  positive(temperature, "temperature");
  positive(dt, "dt");
  if (!(beta_p >= 0.0) || !(beta_q >= 0.0)) throw InvalidModel("friction coefficients must be >= 0");
  if (!std::isfinite(force)) throw InvalidModel("force must be finite");
  if (n_steps < 1) throw InvalidModel("n_steps must be >= 1");
  if (n_trajectories < 1) throw InvalidModel("n_trajectories must be >= 1");
  if (window_steps < 1) throw InvalidModel("window_steps must be >= 1");
  const double fastest = std::max({omega, beta_p, beta_q_scaled()});
  if (dt > 0.01 / fastest) {
    warn("dt = " + std::to_string(dt) + " exceeds the stability bound 0.01/" +
         std::to_string(fastest));
  }
}

int ClassicalParams::resolved_burn_in_steps() const {
  if (burn_in_steps >= 0) return std::min(burn_in_steps, n_steps);
  const double rate = beta_p + beta_q_scaled();
  if (!(rate > 0.0)) return 0;
  const auto steps = static_cast<long long>(std::ceil(10.0 / rate / dt - 1e-9));
  return static_cast<int>(std::min<long long>(steps, n_steps));
}

PhasePoint euler_maruyama_step(const PhasePoint& s, const ClassicalParams& c, double n_p,
                               double n_q) {
  const double vp = c.mass * c.omega * c.omega * s.q;
  PhasePoint out;
  out.p = s.p + (-vp - c.beta_p * s.p + c.force) * c.dt +
          std::sqrt(2.0 * c.kt() * c.beta_p * c.mass * c.dt) * n_p;
  out.q = s.q + (s.p / c.mass - c.beta_q * c.mass * vp) * c.dt +
          std::sqrt(2.0 * c.kt() * c.beta_q * c.mass * c.dt) * n_q;
  return out;
}

void RunningMoments::add(double x) {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

void RunningMoments::merge(const RunningMoments& o) {
  if (o.count == 0) return;
  if (count == 0) {
    *this = o;
    return;
  }
  const double n = static_cast<double>(count + o.count);
  const double delta = o.mean - mean;
  mean += delta * static_cast<double>(o.count) / n;
  m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
  count += o.count;
}

double RunningMoments::variance() const {
  return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
}

double RunningMoments::stderr_of_mean() const {
  return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

void EnsembleStats::merge(const EnsembleStats& o) {
  p.merge(o.p);
  q.merge(o.q);
  p2_over_m.merge(o.p2_over_m);
  mw2_q2.merge(o.mw2_q2);
  m_vprime2.merge(o.m_vprime2);
  energy.merge(o.energy);
  samples_per_trajectory = std::max(samples_per_trajectory, o.samples_per_trajectory);
}

void WindowRecord::merge(const WindowRecord& o) {
  t_start = o.t_start;
  t_end = o.t_end;
  energy_end.merge(o.energy_end);
  p2_over_m.merge(o.p2_over_m);
  mw2_q2.merge(o.mw2_q2);
  de_dt.merge(o.de_dt);
  work_rate.merge(o.work_rate);
  heat_p.merge(o.heat_p);
  heat_q.merge(o.heat_q);
  residual.merge(o.residual);
}

EnsembleResult simulate_ensemble(const ClassicalParams& params) {
  params.validate();
  const int burn_in = params.resolved_burn_in_steps();
  const std::size_t n_windows =
      (static_cast<std::size_t>(params.n_steps) + params.window_steps - 1) / params.window_steps;
  const auto n_traj = static_cast<std::size_t>(params.n_trajectories);
  const std::size_t n_blocks = (n_traj + kBlockLanes - 1) / kBlockLanes;

  const BlockRunner runner(params, burn_in, n_windows);
  std::vector<BlockResult> blocks(n_blocks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next++; b < n_blocks; b = next++) {
      const std::size_t first = b * kBlockLanes;
      blocks[b] = runner.run(first, std::min(kBlockLanes, n_traj - first));
    }
  };
  const std::size_t n_threads =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), n_blocks));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Fixed merge order keeps the result independent of scheduling.
  EnsembleResult out;
  out.burn_in_steps = burn_in;
  out.windows.resize(n_windows);
  for (const BlockResult& b : blocks) {
    out.stationary.merge(b.stationary);
    out.whole_run.merge(b.whole_run);
    for (std::size_t w = 0; w < n_windows; ++w) out.windows[w].merge(b.windows[w]);
  }
  return out;
}

bool Residual::within(double sigmas) const { return std::abs(value) <= sigmas * std_error; }

StationaryResiduals stationary_check(const EnsembleStats& stats, const ClassicalParams& params) {
  if (stats.samples_per_trajectory == 0 || stats.p2_over_m.count < 2) {
    throw InsufficientSamples("stationary_check: no post-burn-in samples");
  }
  const double kt = params.kt();
  const double k = params.mass * params.omega * params.omega;
  StationaryResiduals r;
  r.p2 = {stats.p2_over_m.mean - kt, stats.p2_over_m.stderr_of_mean()};
  r.q2 = {stats.mw2_q2.mean - kt, stats.mw2_q2.stderr_of_mean()};
  r.equi_r = {stats.m_vprime2.mean - kt * params.mass * k, stats.m_vprime2.stderr_of_mean()};
  r.mean_q = {stats.q.mean - params.shift(), stats.q.stderr_of_mean()};
  const double limit = 0.1 * kt;
  if (r.p2.std_error > limit || r.q2.std_error > limit ||
      r.equi_r.std_error / (params.mass * k) > limit) {
    throw InsufficientSamples("stationary_check: standard error exceeds 10% of kT");
  }
  return r;
}

EnergyBalance energy_balance_check(const EnsembleResult& result, const ClassicalParams& params) {
  (void)params;
  EnergyBalance b;
  b.whole_run = {result.whole_run.residual.mean, result.whole_run.residual.stderr_of_mean()};
  double worst = -1.0;
  for (const WindowRecord& w : result.windows) {
    const Residual r{w.residual.mean, w.residual.stderr_of_mean()};
    const double z = r.std_error > 0.0 ? std::abs(r.value) / r.std_error : 0.0;
    if (z > worst) {
      worst = z;
      b.worst_window = r;
    }
  }
  return b;
}

}  // namespace qthermo
