#pragma once

// Internal: per-backend kernel entry points.  kernels.cpp owns dispatch.

#include <cstddef>

#if defined(__x86_64__) || defined(_M_X64)
#define GSTS_ARCH_X86 1
#endif
#if defined(__aarch64__)
#define GSTS_ARCH_ARM64 1
#endif

namespace gsts::kernels::detail {

double dot_scalar(std::size_t n, const double* x, const double* y);
double nrm2_scalar(std::size_t n, const double* x);
void axpy_scalar(std::size_t n, double a, const double* x, double* y);
void scal_scalar(std::size_t n, double a, double* x);
void rot_scalar(std::size_t n, double* x, double* y, double c, double s);
void csr_matvec_scalar(std::size_t rows, const std::size_t* row_ptr,
                       const std::size_t* col_idx, const double* val,
                       const double* x, double* y);

#if GSTS_ARCH_X86
double dot_avx2(std::size_t n, const double* x, const double* y);
double nrm2_avx2(std::size_t n, const double* x);
void axpy_avx2(std::size_t n, double a, const double* x, double* y);
void scal_avx2(std::size_t n, double a, double* x);
void rot_avx2(std::size_t n, double* x, double* y, double c, double s);
void csr_matvec_avx2(std::size_t rows, const std::size_t* row_ptr,
                     const std::size_t* col_idx, const double* val,
                     const double* x, double* y);
#endif

#if GSTS_ARCH_ARM64
double dot_neon(std::size_t n, const double* x, const double* y);
double nrm2_neon(std::size_t n, const double* x);
void axpy_neon(std::size_t n, double a, const double* x, double* y);
void scal_neon(std::size_t n, double a, double* x);
void rot_neon(std::size_t n, double* x, double* y, double c, double s);
void csr_matvec_neon(std::size_t rows, const std::size_t* row_ptr,
                     const std::size_t* col_idx, const double* val,
                     const double* x, double* y);
#endif

} // namespace gsts::kernels::detail
