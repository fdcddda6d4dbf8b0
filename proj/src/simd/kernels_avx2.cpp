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

// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace qthermo::simd::avx2 {

void cmatvec(const std::complex<double>* a, const std::complex<double>* x,
             std::complex<double>* y, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const std::size_t pairs = n / 2;  // two complex numbers per register
  for (std::size_t i = 0; i < 2 * n; ++i) yd[i] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const __m256d xr = _mm256_set1_pd(xd[2 * j]);
    const __m256d xi = _mm256_set1_pd(xd[2 * j + 1]);
    const double* col = ad + 2 * j * n;
    for (std::size_t k = 0; k < pairs; ++k) {
      const __m256d av = _mm256_loadu_pd(col + 4 * k);
      const __m256d swapped = _mm256_permute_pd(av, 0b0101);  // [ai ar ai ar]
      // even lanes: ar*xr - ai*xi, odd lanes: ai*xr + ar*xi
      const __m256d prod = _mm256_fmaddsub_pd(av, xr, _mm256_mul_pd(swapped, xi));
      _mm256_storeu_pd(yd + 4 * k, _mm256_add_pd(_mm256_loadu_pd(yd + 4 * k), prod));
    }
    if (n % 2) {
      const std::size_t i = n - 1;
      const double ar = col[2 * i];
      const double ai = col[2 * i + 1];
      yd[2 * i] += ar * xd[2 * j] - ai * xd[2 * j + 1];
      yd[2 * i + 1] += ai * xd[2 * j] + ar * xd[2 * j + 1];
    }
  }
}

void em_step(double* q, double* p, const double* np, const double* nq, std::size_t n,
             const EmCoefficients& c) {
  const __m256d pp = _mm256_set1_pd(c.pp);
  const __m256d pq = _mm256_set1_pd(c.pq);
  const __m256d p0 = _mm256_set1_pd(c.p0);
  const __m256d pn = _mm256_set1_pd(c.p_noise);
  const __m256d qq = _mm256_set1_pd(c.qq);
  const __m256d qp = _mm256_set1_pd(c.qp);
  const __m256d qn = _mm256_set1_pd(c.q_noise);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d pv = _mm256_loadu_pd(p + i);
    const __m256d qv = _mm256_loadu_pd(q + i);
    __m256d pnew = _mm256_fmadd_pd(pn, _mm256_loadu_pd(np + i), p0);
    pnew = _mm256_fmadd_pd(pq, qv, pnew);
    pnew = _mm256_fmadd_pd(pp, pv, pnew);
    __m256d qnew = _mm256_mul_pd(qn, _mm256_loadu_pd(nq + i));
    qnew = _mm256_fmadd_pd(qp, pv, qnew);
    qnew = _mm256_fmadd_pd(qq, qv, qnew);
    _mm256_storeu_pd(p + i, pnew);
    _mm256_storeu_pd(q + i, qnew);
  }
  for (; i < n; ++i) {
    const double pv = p[i];
    const double qv = q[i];
    p[i] = c.pp * pv + c.pq * qv + c.p0 + c.p_noise * np[i];
    q[i] = c.qq * qv + c.qp * pv + c.q_noise * nq[i];
  }
}

void accumulate_moments(const double* q, const double* p, std::size_t n, double* sp, double* sq,
                        double* spp, double* sqq) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d pv = _mm256_loadu_pd(p + i);
    const __m256d qv = _mm256_loadu_pd(q + i);
    _mm256_storeu_pd(sp + i, _mm256_add_pd(_mm256_loadu_pd(sp + i), pv));
    _mm256_storeu_pd(sq + i, _mm256_add_pd(_mm256_loadu_pd(sq + i), qv));
    _mm256_storeu_pd(spp + i, _mm256_fmadd_pd(pv, pv, _mm256_loadu_pd(spp + i)));
    _mm256_storeu_pd(sqq + i, _mm256_fmadd_pd(qv, qv, _mm256_loadu_pd(sqq + i)));
  }
  for (; i < n; ++i) {
    sp[i] += p[i];
    sq[i] += q[i];
    spp[i] += p[i] * p[i];
    sqq[i] += q[i] * q[i];
  }
}

}  // namespace qthermo::simd::avx2
