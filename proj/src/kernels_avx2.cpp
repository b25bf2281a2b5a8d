// Copyright 2026 The spinsched Authors.
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

// Compiled with -mavx2 -mfma. Keep this translation unit free of inline
// library templates so no AVX2-encoded copy of them can leak into the rest
// of the binary through COMDAT folding.

#include <immintrin.h>

#include <cstddef>

namespace spinsched::kernels::avx2 {

double spin_weighted_sum(const double* same, const double* flip, const double* mask,
                         std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d m0 = _mm256_loadu_pd(mask + i);
    const __m256d m1 = _mm256_loadu_pd(mask + i + 4);
    const __m256d s0 = _mm256_mul_pd(_mm256_sub_pd(one, m0), _mm256_loadu_pd(same + i));
    const __m256d s1 = _mm256_mul_pd(_mm256_sub_pd(one, m1), _mm256_loadu_pd(same + i + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_fmadd_pd(m0, _mm256_loadu_pd(flip + i), s0));
    acc1 = _mm256_add_pd(acc1, _mm256_fmadd_pd(m1, _mm256_loadu_pd(flip + i + 4), s1));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d m0 = _mm256_loadu_pd(mask + i);
    const __m256d s0 = _mm256_mul_pd(_mm256_sub_pd(one, m0), _mm256_loadu_pd(same + i));
    acc0 = _mm256_add_pd(acc0, _mm256_fmadd_pd(m0, _mm256_loadu_pd(flip + i), s0));
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  const __m128d lo = _mm256_castpd256_pd128(acc0);
  const __m128d hi = _mm256_extractf128_pd(acc0, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  double acc = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
  for (; i < n; ++i) acc += (1.0 - mask[i]) * same[i] + mask[i] * flip[i];
  return acc;
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace spinsched::kernels::avx2
