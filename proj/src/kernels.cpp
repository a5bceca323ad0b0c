#include "gsts/kernels.hpp"
#include "kernels_detail.hpp"

#include <cmath>
#include <stdexcept>

namespace gsts::kernels {

namespace detail {

double dot_scalar(std::size_t n, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double nrm2_scalar(std::size_t n, const double* x) {
  return std::sqrt(dot_scalar(n, x, x));
}

void axpy_scalar(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(std::size_t n, double a, double* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void rot_scalar(std::size_t n, double* x, double* y, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    x[i] = c * xi + s * y[i];
    y[i] = -s * xi + c * y[i];
  }
}

void csr_matvec_scalar(std::size_t rows, const std::size_t* row_ptr,
                       const std::size_t* col_idx, const double* val,
                       const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      s += val[k] * x[col_idx[k]];
    y[i] = s;
  }
}

} // namespace detail

namespace {

struct Vtable {
  double (*dot)(std::size_t, const double*, const double*);
  double (*nrm2)(std::size_t, const double*);
  void (*axpy)(std::size_t, double, const double*, double*);
  void (*scal)(std::size_t, double, double*);
  void (*rot)(std::size_t, double*, double*, double, double);
  void (*csr_matvec)(std::size_t, const std::size_t*, const std::size_t*,
                     const double*, const double*, double*);
};

constexpr Vtable kScalar = {
    detail::dot_scalar,  detail::nrm2_scalar, detail::axpy_scalar,
    detail::scal_scalar, detail::rot_scalar,  detail::csr_matvec_scalar};

#if GSTS_ARCH_X86
constexpr Vtable kAvx2 = {
    detail::dot_avx2,  detail::nrm2_avx2, detail::axpy_avx2,
    detail::scal_avx2, detail::rot_avx2,  detail::csr_matvec_avx2};
#endif

#if GSTS_ARCH_ARM64
constexpr Vtable kNeon = {
    detail::dot_neon,  detail::nrm2_neon, detail::axpy_neon,
    detail::scal_neon, detail::rot_neon,  detail::csr_matvec_neon};
#endif

Backend detect_backend() {
#if GSTS_ARCH_X86
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Backend::avx2;
#elif GSTS_ARCH_ARM64
  return Backend::neon;
#endif
  return Backend::scalar;
}

const Vtable* table_for(Backend b) {
  switch (b) {
    case Backend::scalar: return &kScalar;
#if GSTS_ARCH_X86
    case Backend::avx2: return &kAvx2;
#endif
#if GSTS_ARCH_ARM64
    case Backend::neon: return &kNeon;
#endif
    default: return nullptr;
  }
}

struct State {
  Backend backend = detect_backend();
  const Vtable* vt = table_for(detect_backend());
};

State& state() {
  static State s;
  return s;
}

} // namespace

Backend active_backend() { return state().backend; }

bool backend_supported(Backend b) {
  if (b == Backend::scalar) return true;
#if GSTS_ARCH_X86
  if (b == Backend::avx2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#endif
#if GSTS_ARCH_ARM64
  if (b == Backend::neon) return true;
#endif
  return false;
}

void set_backend(Backend b) {
  if (!backend_supported(b))
    throw std::invalid_argument("kernels: backend not supported on this host");
  state().backend = b;
  state().vt = table_for(b);
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

double dot(std::size_t n, const double* x, const double* y) {
  return state().vt->dot(n, x, y);
}

double nrm2(std::size_t n, const double* x) { return state().vt->nrm2(n, x); }

void axpy(std::size_t n, double a, const double* x, double* y) {
  state().vt->axpy(n, a, x, y);
}

void scal(std::size_t n, double a, double* x) { state().vt->scal(n, a, x); }

void rot(std::size_t n, double* x, double* y, double c, double s) {
  state().vt->rot(n, x, y, c, s);
}

void csr_matvec(std::size_t rows, const std::size_t* row_ptr,
                const std::size_t* col_idx, const double* val, const double* x,
                double* y) {
  state().vt->csr_matvec(rows, row_ptr, col_idx, val, x, y);
}

} // namespace gsts::kernels
