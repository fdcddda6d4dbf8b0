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

#include "kernels_impl.hpp"

namespace qthermo::simd::scalar {

void cmatvec(const std::complex<double>* a, const std::complex<double>* x,
             std::complex<double>* y, std::size_t n) {
  // Interleaved re/im views; avoids the NaN-recovery path of complex operator*.
  const double* ad = reinterpret_cast<const double*>(a);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < 2 * n; ++i) yd[i] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double xr = xd[2 * j];
    const double xi = xd[2 * j + 1];
    const double* col = ad + 2 * j * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double ar = col[2 * i];
      const double ai = col[2 * i + 1];
      yd[2 * i] += ar * xr - ai * xi;
      yd[2 * i + 1] += ai * xr + ar * xi;
    }
  }
}

void em_step(double* q, double* p, const double* np, const double* nq, std::size_t n,
             const EmCoefficients& c) {
  for (std::size_t i = 0; i < n; ++i) {
    const double p0 = p[i];
    const double q0 = q[i];
    p[i] = c.pp * p0 + c.pq * q0 + c.p0 + c.p_noise * np[i];
    q[i] = c.qq * q0 + c.qp * p0 + c.q_noise * nq[i];
  }
}

void accumulate_moments(const double* q, const double* p, std::size_t n, double* sp, double* sq,
                        double* spp, double* sqq) {
  for (std::size_t i = 0; i < n; ++i) {
    sp[i] += p[i];
    sq[i] += q[i];
    spp[i] += p[i] * p[i];
    sqq[i] += q[i] * q[i];
  }
}

}  // namespace qthermo::simd::scalar
