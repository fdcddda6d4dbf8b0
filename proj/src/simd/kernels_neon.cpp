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

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace qthermo::simd::neon {

void cmatvec(const std::complex<double>* a, const std::complex<double>* x,
             std::complex<double>* y, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < 2 * n; ++i) yd[i] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // [xr, xr] and [-xi, xi]
    const float64x2_t xr = vdupq_n_f64(xd[2 * j]);
    const float64x2_t xi = {-xd[2 * j + 1], xd[2 * j + 1]};
    const double* col = ad + 2 * j * n;
    for (std::size_t i = 0; i < n; ++i) {
      const float64x2_t av = vld1q_f64(col + 2 * i);
      const float64x2_t swapped = vextq_f64(av, av, 1);  // [ai, ar]
      float64x2_t acc = vld1q_f64(yd + 2 * i);
      acc = vfmaq_f64(acc, av, xr);
      acc = vfmaq_f64(acc, swapped, xi);
      vst1q_f64(yd + 2 * i, acc);
    }
  }
}

void em_step(double* q, double* p, const double* np, const double* nq, std::size_t n,
             const EmCoefficients& c) {
  const float64x2_t pp = vdupq_n_f64(c.pp);
  const float64x2_t pq = vdupq_n_f64(c.pq);
  const float64x2_t p0 = vdupq_n_f64(c.p0);
  const float64x2_t pn = vdupq_n_f64(c.p_noise);
  const float64x2_t qq = vdupq_n_f64(c.qq);
  const float64x2_t qp = vdupq_n_f64(c.qp);
  const float64x2_t qn = vdupq_n_f64(c.q_noise);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t pv = vld1q_f64(p + i);
    const float64x2_t qv = vld1q_f64(q + i);
    float64x2_t pnew = vfmaq_f64(p0, pn, vld1q_f64(np + i));
    pnew = vfmaq_f64(pnew, pq, qv);
    pnew = vfmaq_f64(pnew, pp, pv);
    float64x2_t qnew = vmulq_f64(qn, vld1q_f64(nq + i));
    qnew = vfmaq_f64(qnew, qp, pv);
    qnew = vfmaq_f64(qnew, qq, qv);
    vst1q_f64(p + i, pnew);
    vst1q_f64(q + i, qnew);
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
  for (; i + 2 <= n; i += 2) {
    const float64x2_t pv = vld1q_f64(p + i);
    const float64x2_t qv = vld1q_f64(q + i);
    vst1q_f64(sp + i, vaddq_f64(vld1q_f64(sp + i), pv));
    vst1q_f64(sq + i, vaddq_f64(vld1q_f64(sq + i), qv));
    vst1q_f64(spp + i, vfmaq_f64(vld1q_f64(spp + i), pv, pv));
    vst1q_f64(sqq + i, vfmaq_f64(vld1q_f64(sqq + i), qv, qv));
  }
  for (; i < n; ++i) {
    sp[i] += p[i];
    sq[i] += q[i];
    spp[i] += p[i] * p[i];
    sqq[i] += q[i] * q[i];
  }
}

}  // namespace qthermo::simd::neon
