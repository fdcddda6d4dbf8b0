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

// Hot loops with a portable scalar reference and vectorized variants.
// The backend is chosen once at startup from CPU features and can be
// overridden (tests compare every supported backend against Scalar).

#pragma once

#include <complex>
#include <cstddef>

namespace qthermo::simd {

enum class Backend { Scalar, Avx2, Neon };

const char* backend_name(Backend backend);
bool backend_supported(Backend backend);
/// Best supported backend for this CPU.
Backend detect_backend();
Backend active_backend();
/// Throws DomainError when `backend` is not supported here.
void set_backend(Backend backend);

/// y = A x for a column-major n x n matrix. y must not alias x.
void cmatvec(const std::complex<double>* a, const std::complex<double>* x,
             std::complex<double>* y, std::size_t n);

/// One Euler-Maruyama step for a linear force, over n independent lanes:
///   p' = pp*p + pq*q + p0 + p_noise*np
///   q' = qq*q + qp*p + q_noise*nq      (old p)
struct EmCoefficients {
  double pp = 1.0;
  double pq = 0.0;
  double p0 = 0.0;
  double p_noise = 0.0;
  double qq = 1.0;
  double qp = 0.0;
  double q_noise = 0.0;
};

void em_step(double* q, double* p, const double* np, const double* nq, std::size_t n,
             const EmCoefficients& c);

/// Per-lane running sums: sp += p, sq += q, spp += p^2, sqq += q^2.
void accumulate_moments(const double* q, const double* p, std::size_t n, double* sp, double* sq,
                        double* spp, double* sqq);

}  // namespace qthermo::simd
