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

#include "qthermo/liouvillian.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>
#include <utility>

#include "qthermo/diagnostics.hpp"
#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

struct KindName {
  ModelKind kind;
  const char* camel;
  const char* kebab;
};

constexpr std::array<KindName, 7> kKindNames = {{
    {ModelKind::Unitary, "Unitary", "unitary"},
    {ModelKind::FullHermitian, "FullHermitian", "full-hermitian"},
    {ModelKind::FullNonHermitian, "FullNonHermitian", "full-nonhermitian"},
    {ModelKind::MomentumOnlyHermitian, "MomentumOnlyHermitian", "momentum-only-hermitian"},
    {ModelKind::MomentumOnlyNonHermitian, "MomentumOnlyNonHermitian",
     "momentum-only-nonhermitian"},
    {ModelKind::CaldeiraLeggett, "CaldeiraLeggett", "caldeira-leggett"},
    {ModelKind::Qome, "QOME", "qome"},
}};

// (cosh(x) - 1)/x
double coshm1c(double x) {
  if (std::abs(x) < 1e-6) return x / 2.0 + x * x * x / 24.0;
  return (std::cosh(x) - 1.0) / x;
}

// X -> [A, [A, X]] = A^2 X - 2 A X A + X A^2
Superoperator double_commutator_superop(const ComplexMatrix& a) {
  const ComplexMatrix a2 = a * a;
  return left_mult_superop(a2) - Complex(2.0) * sandwich_superop(a, a) + right_mult_superop(a2);
}

// X -> [A, F X + X G] = A F X + A X G - F X A - X G A
Superoperator commutator_of_friction(const ComplexMatrix& a, const ComplexMatrix& f,
                                     const ComplexMatrix& g) {
  return left_mult_superop(a * f) + sandwich_superop(a, g) - sandwich_superop(f, a) -
         right_mult_superop(g * a);
}

double one_norm(const ComplexMatrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace

std::string to_string(ModelKind kind) {
  for (const auto& n : kKindNames) {
    if (n.kind == kind) return n.camel;
  }
  return "Unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (const auto& n : kKindNames) {
    std::string camel;
    for (const char* c = n.camel; *c; ++c) {
      camel.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(*c))));
    }
    if (lower == camel || lower == n.kebab) return n.kind;
  }
  return std::nullopt;
}

bool is_dissipative(ModelKind kind) { return kind != ModelKind::Unitary; }

bool is_nonhermitian(ModelKind kind) {
  return kind == ModelKind::FullNonHermitian || kind == ModelKind::MomentumOnlyNonHermitian;
}

bool is_momentum_only(ModelKind kind) {
  return kind == ModelKind::MomentumOnlyHermitian || kind == ModelKind::MomentumOnlyNonHermitian ||
         kind == ModelKind::CaldeiraLeggett;
}

Superoperator build_generator(const SpectralSystem& sys, const BathParams& bath, ModelKind kind) {
  if (kind == ModelKind::Qome) {
    throw InvalidModel("build_generator: QOME needs build_qome");
  }
  if (!(bath.kt > 0.0)) throw InvalidModel("build_generator: kT must be positive");
  if (!(bath.beta_p >= 0.0) || !(bath.beta_q >= 0.0)) {
    throw InvalidModel("build_generator: friction coefficients must be non-negative");
  }
  if (is_dissipative(kind) && !(bath.beta_p > 0.0)) {
    throw InvalidModel("build_generator: " + to_string(kind) + " needs beta_p > 0");
  }

  const Complex i(0.0, 1.0);
  const double hbar = sys.hbar;
  const ComplexMatrix& q = sys.position;
  const ComplexMatrix& p = sys.momentum;

  Superoperator l = (1.0 / (i * hbar)) * commutator_superop(sys.hamiltonian());
  if (bath.force != 0.0) l -= (bath.force / (i * hbar)) * commutator_superop(q);
  if (!is_dissipative(kind)) return l;

  const bool nonherm = is_nonhermitian(kind);
  // Friction map X -> F X + X G: {Theta, X} or Xi^dagger X + X Xi.
  auto friction_pair = [&](FrictionChannel channel) -> std::pair<ComplexMatrix, ComplexMatrix> {
    if (kind == ModelKind::CaldeiraLeggett) return {p, p};
    if (nonherm) {
      ComplexMatrix xi = nonhermitian_friction(sys, bath.kt, channel);
      return {xi.adjoint(), std::move(xi)};
    }
    ComplexMatrix theta = hermitian_friction(sys, bath.kt, channel);
    return {theta, theta};
  };

  const double m = sys.mass;
  l -= Complex(bath.kt * bath.beta_p * m / (hbar * hbar)) * double_commutator_superop(q);
  const auto [fp, gp] = friction_pair(FrictionChannel::Momentum);
  l += (bath.beta_p / (2.0 * i * hbar)) * commutator_of_friction(q, fp, gp);

  if (!is_momentum_only(kind) && bath.beta_q > 0.0) {
    l -= Complex(bath.kt * bath.beta_q * m / (hbar * hbar)) * double_commutator_superop(p);
    const auto [fq, gq] = friction_pair(FrictionChannel::Position);
    l -= (bath.beta_q / (2.0 * i * hbar)) * commutator_of_friction(p, fq, gq);
  }
  return l;
}

Superoperator build_liouvillian(const OscillatorModel& model, ModelKind kind) {
  model.validate();
  if (kind == ModelKind::Qome) return build_qome(model, qome_mapping(model));
  BathParams bath{model.kt(), model.beta_p, model.beta_q, model.force};
  if (is_momentum_only(kind)) bath.beta_q = 0.0;
  return build_generator(oscillator_system(model), bath, kind);
}

QomeParams qome_mapping(const OscillatorModel& model) {
  model.validate();
  const double bp = model.beta_p;
  const double bq = model.beta_q_scaled();
  if (std::abs(bp - bq) > 1e-12 * std::max(bp, bq)) {
    throw OffBisector("qome_mapping: beta_p = " + std::to_string(bp) + " but m^2 w^2 beta_q = " +
                      std::to_string(bq));
  }
  QomeParams out;
  out.nbar = 1.0 / std::expm1(model.eta());
  out.gamma0 = 2.0 * bp * tanhc(model.xi());
  return out;
}

Superoperator build_qome(const OscillatorModel& model, const QomeParams& params) {
  model.validate();
  if (!(params.gamma0 >= 0.0) || !(params.nbar >= 0.0)) {
    throw InvalidModel("build_qome: gamma0 and nbar must be non-negative");
  }
  const auto [a, ad] = ladder_operators(model);
  const ComplexMatrix n = ad * a;
  const ComplexMatrix nn = a * ad;
  const Complex i(0.0, 1.0);

  Superoperator l = (-i * model.omega) * commutator_superop(n);
  if (model.force != 0.0) {
    l -= (model.force / (i * model.hbar)) * commutator_superop(position_matrix(model));
  }
  const double down = 0.5 * params.gamma0 * (params.nbar + 1.0);
  const double up = 0.5 * params.gamma0 * params.nbar;
  l += Complex(down) * (Complex(2.0) * sandwich_superop(a, ad) - anticommutator_superop(n));
  l += Complex(up) * (Complex(2.0) * sandwich_superop(ad, a) - anticommutator_superop(nn));
  return l;
}

double lindblad_x1(double xi) {
  const double r = (std::cosh(xi) - 1.0) / std::sinh(xi);
  return r * r;
}

double lindblad_x2(double xi) {
  const double r = (std::cosh(xi) + 1.0) / std::sinh(xi);
  return r * r;
}

LindbladReport lindblad_region_check(const OscillatorModel& model, bool nonhermitian,
                                     std::optional<double> choi_dt) {
  model.validate();
  LindbladReport r;
  const double kt = model.kt();
  const double m = model.mass;
  const double bq_scaled = model.beta_q_scaled();
  r.xi = model.xi();
  r.x1 = lindblad_x1(r.xi);
  r.x2 = lindblad_x2(r.xi);
  r.x = model.beta_p / bq_scaled;

  r.d_pp = kt * model.beta_p * m;
  r.d_qq = kt * model.beta_q * m;
  double kernel = tanhc(r.xi);
  if (nonhermitian) {
    const double eta = model.eta();
    const double extra = 0.5 * m * model.hbar * model.omega * coshm1c(eta);
    r.d_pp += extra * model.beta_p;
    r.d_qq += extra * model.beta_q;
    kernel = sinhc(eta);
  }
  const double lpm = model.beta_p * kernel;  // lambda + mu
  const double lmm = bq_scaled * kernel;     // lambda - mu
  r.lambda = 0.5 * (lpm + lmm);
  r.mu = 0.5 * (lpm - lmm);

  r.cond1 = r.d_pp > 0.0;
  r.cond2 = r.d_qq > 0.0;
  r.cond3 = r.d_pp * r.d_qq - r.d_pq * r.d_pq >=
            r.lambda * r.lambda * model.hbar * model.hbar / 4.0;

  if (choi_dt) {
    const ModelKind kind = nonhermitian ? ModelKind::FullNonHermitian : ModelKind::FullHermitian;
    r.choi_min_eigenvalue = choi_min_eigenvalue(build_liouvillian(model, kind), *choi_dt);
  }
  return r;
}

ComplexMatrix choi_matrix(const Superoperator& step_map) {
  const Eigen::Index d = step_map.op_dim();
  const ComplexMatrix& p = step_map.matrix();
  ComplexMatrix c(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      // Phi(E_ij) = devec(P[:, i + j d])
      for (Eigen::Index l = 0; l < d; ++l) {
        for (Eigen::Index k = 0; k < d; ++k) c(i * d + k, j * d + l) = p(k + l * d, i + j * d);
      }
    }
  }
  return c;
}

double choi_min_eigenvalue(const Superoperator& generator, double dt) {
  if (!(dt > 0.0)) throw DomainError("choi_min_eigenvalue: dt must be positive");
  const double scaled = one_norm(generator.matrix()) * dt;
  if (scaled > 1.0) {
    warn("choi_min_eigenvalue: ||L||_1 dt = " + std::to_string(scaled) + " exceeds 1");
  }
  ComplexMatrix c = choi_matrix(exponentiate(generator, dt));
  c = 0.5 * (c + c.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(c, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("choi_min_eigenvalue: eigensolver did not converge");
  }
  return solver.eigenvalues().minCoeff();
}

}  // namespace qthermo
