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

#include <atomic>
#include <string>

#include "kernels_impl.hpp"
#include "qthermo/errors.hpp"

namespace qthermo::simd {

namespace {

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect_backend()};
  return slot;
}

}  // namespace

const char* backend_name(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(QTHERMO_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(QTHERMO_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend detect_backend() {
  if (backend_supported(Backend::Avx2)) return Backend::Avx2;
  if (backend_supported(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!backend_supported(backend)) {
    throw DomainError(std::string("simd backend not supported on this CPU: ") +
                      backend_name(backend));
  }
  backend_slot().store(backend, std::memory_order_relaxed);
}

#if defined(QTHERMO_HAVE_AVX2)
#define QTHERMO_AVX2_CASE(call) \
  case Backend::Avx2: avx2::call; return;
#else
#define QTHERMO_AVX2_CASE(call)
#endif
#if defined(QTHERMO_HAVE_NEON)
#define QTHERMO_NEON_CASE(call) \
  case Backend::Neon: neon::call; return;
#else
#define QTHERMO_NEON_CASE(call)
#endif

#define QTHERMO_DISPATCH(call)    \
  switch (active_backend()) {     \
    QTHERMO_AVX2_CASE(call)       \
    QTHERMO_NEON_CASE(call)       \
    default: scalar::call; return; \
  }

void cmatvec(const std::complex<double>* a, const std::complex<double>* x,
             std::complex<double>* y, std::size_t n) {
  QTHERMO_DISPATCH(cmatvec(a, x, y, n))
}

void em_step(double* q, double* p, const double* np, const double* nq, std::size_t n,
             const EmCoefficients& c) {
  QTHERMO_DISPATCH(em_step(q, p, np, nq, n, c))
}

void accumulate_moments(const double* q, const double* p, std::size_t n, double* sp, double* sq,
                        double* spp, double* sqq) {
  QTHERMO_DISPATCH(accumulate_moments(q, p, n, sp, sq, spp, sqq))
}

}  // namespace qthermo::simd
