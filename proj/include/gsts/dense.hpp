#pragma once

#include <cstddef>
#include <vector>

namespace gsts {

using Vector = std::vector<double>;

// Row-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  double* row(std::size_t i) { return data.data() + i * cols; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }

  static DenseMatrix identity(std::size_t n);
};

DenseMatrix transpose(const DenseMatrix& a);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
Vector matvec(const DenseMatrix& a, const Vector& x);
Vector matvec_transpose(const DenseMatrix& a, const Vector& x);

// c = a + s*b
DenseMatrix add_scaled(const DenseMatrix& a, double s, const DenseMatrix& b);

double frobenius_norm(const DenseMatrix& a);
double max_abs(const DenseMatrix& a);
double trace(const DenseMatrix& a);

// Column j as a vector.
Vector column(const DenseMatrix& a, std::size_t j);
void set_column(DenseMatrix& a, std::size_t j, const Vector& v);

// Submatrix a[r0:r0+nr, c0:c0+nc).
DenseMatrix block(const DenseMatrix& a, std::size_t r0, std::size_t c0,
                  std::size_t nr, std::size_t nc);

// Gauss-Jordan inverse with partial pivoting.  Throws on singular input.
// Intended for small dense systems; the factored paths are preferred in
// solver code.
DenseMatrix gauss_jordan_inverse(const DenseMatrix& a);

} // namespace gsts
