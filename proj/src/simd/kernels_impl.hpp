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

#pragma once

#include <complex>
#include <cstddef>

#include "qthermo/simd/kernels.hpp"

namespace qthermo::simd {

#define QTHERMO_DECLARE_KERNELS(ns)                                                          \
  namespace ns {                                                                             \
  void cmatvec(const std::complex<double>* a, const std::complex<double>* x,                 \
               std::complex<double>* y, std::size_t n);                                      \
  void em_step(double* q, double* p, const double* np, const double* nq, std::size_t n,      \
               const EmCoefficients& c);                                                     \
  void accumulate_moments(const double* q, const double* p, std::size_t n, double* sp,       \
                          double* sq, double* spp, double* sqq);                             \
  }

QTHERMO_DECLARE_KERNELS(scalar)
#if defined(QTHERMO_HAVE_AVX2)
QTHERMO_DECLARE_KERNELS(avx2)
#endif
#if defined(QTHERMO_HAVE_NEON)
QTHERMO_DECLARE_KERNELS(neon)
#endif

#undef QTHERMO_DECLARE_KERNELS

}  // namespace qthermo::simd
