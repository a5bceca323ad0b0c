#include "kernels_detail.hpp"

// NEON kernel variants for AArch64 builds.

#if GSTS_ARCH_ARM64

#include <arm_neon.h>

#include <cmath>

namespace gsts::kernels::detail {

double dot_neon(std::size_t n, const double* x, const double* y) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(acc0) + vaddvq_f64(acc1);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double nrm2_neon(std::size_t n, const double* x) {
  return std::sqrt(dot_neon(n, x, x));
}

void axpy_neon(std::size_t n, double a, const double* x, double* y) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void scal_neon(std::size_t n, double a, double* x) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void rot_neon(std::size_t n, double* x, double* y, double c, double s) {
  const float64x2_t vc = vdupq_n_f64(c);
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vy = vld1q_f64(y + i);
    vst1q_f64(x + i, vfmaq_f64(vmulq_f64(vs, vy), vc, vx));
    vst1q_f64(y + i, vfmsq_f64(vmulq_f64(vc, vy), vs, vx));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    x[i] = c * xi + s * y[i];
    y[i] = -s * xi + c * y[i];
  }
}

void csr_matvec_neon(std::size_t rows, const std::size_t* row_ptr,
                     const std::size_t* col_idx, const double* val,
                     const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      s += val[k] * x[col_idx[k]];
    y[i] = s;
  }
}

} // namespace gsts::kernels::detail

#endif // GSTS_ARCH_ARM64
