#include "kernels_detail.hpp"

// AVX2+FMA kernel variants.  This translation unit is compiled with
// -mavx2 -mfma; it must only be reached through the runtime dispatcher.

#if GSTS_ARCH_X86

#include <immintrin.h>

#include <cmath>

namespace gsts::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

} // namespace

double dot_avx2(std::size_t n, const double* x, const double* y) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double nrm2_avx2(std::size_t n, const double* x) {
  return std::sqrt(dot_avx2(n, x, x));
}

void axpy_avx2(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scal_avx2(std::size_t n, double a, double* x) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void rot_avx2(std::size_t n, double* x, double* y, double c, double s) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_fmadd_pd(vc, vx, _mm256_mul_pd(vs, vy)));
    _mm256_storeu_pd(y + i, _mm256_fmsub_pd(vc, vy, _mm256_mul_pd(vs, vx)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    x[i] = c * xi + s * y[i];
    y[i] = -s * xi + c * y[i];
  }
}

void csr_matvec_avx2(std::size_t rows, const std::size_t* row_ptr,
                     const std::size_t* col_idx, const double* val,
                     const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t b = row_ptr[i], e = row_ptr[i + 1];
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = b;
    for (; k + 4 <= e; k += 4) {
      const __m256i idx = _mm256_loadu_si256(
          reinterpret_cast<const __m256i*>(col_idx + k));
      const __m256d vx = _mm256_i64gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(val + k), vx, acc);
    }
    double s = hsum(acc);
    for (; k < e; ++k) s += val[k] * x[col_idx[k]];
    y[i] = s;
  }
}

} // namespace gsts::kernels::detail

#endif // GSTS_ARCH_X86
