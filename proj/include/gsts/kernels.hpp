#pragma once

// Low-level vector kernels used by every solver in the library.
//
// Each kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant; on AArch64 a NEON variant takes that slot.  The backend
// is picked once at startup from CPU capabilities and can be overridden with
// set_backend() (used by the equivalence tests).  All variants compute the
// same quantity; they may differ in the rounding of the reduction order.

#include <cstddef>
#include <string_view>

namespace gsts::kernels {

enum class Backend { scalar, avx2, neon };

// Backend active for subsequent kernel calls.
Backend active_backend();

// True if the named backend can run on this machine.
bool backend_supported(Backend b);

// Force a backend.  Throws std::invalid_argument if unsupported here.
void set_backend(Backend b);

std::string_view backend_name(Backend b);

// sum_i x[i] * y[i]
double dot(std::size_t n, const double* x, const double* y);

// sqrt(sum_i x[i]^2); plain reduction, no overflow guard
double nrm2(std::size_t n, const double* x);

// y[i] += a * x[i]
void axpy(std::size_t n, double a, const double* x, double* y);

// x[i] *= a
void scal(std::size_t n, double a, double* x);

// Plane rotation of two vectors: x' = c*x + s*y, y' = -s*x + c*y.
void rot(std::size_t n, double* x, double* y, double c, double s);

// y = A*x for CSR A given by (row_ptr, col_idx, val).
void csr_matvec(std::size_t rows, const std::size_t* row_ptr,
                const std::size_t* col_idx, const double* val,
                const double* x, double* y);

} // namespace gsts::kernels
