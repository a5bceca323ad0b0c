#include "gsts/dense.hpp"

#include <algorithm>
#include <cmath>

#include "gsts/errors.hpp"
#include "gsts/kernels.hpp"

namespace gsts {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols != b.rows)
    throw InvalidArgument("matmul: inner dimensions disagree");
  DenseMatrix c(a.rows, b.cols);
  // i-k-j order: the inner update is an axpy over a contiguous row of b.
  for (std::size_t i = 0; i < a.rows; ++i) {
    double* ci = c.row(i);
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik != 0.0) kernels::axpy(b.cols, aik, b.row(k), ci);
    }
  }
  return c;
}

Vector matvec(const DenseMatrix& a, const Vector& x) {
  if (x.size() != a.cols) throw InvalidArgument("matvec: size mismatch");
  Vector y(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    y[i] = kernels::dot(a.cols, a.row(i), x.data());
  return y;
}

Vector matvec_transpose(const DenseMatrix& a, const Vector& x) {
  if (x.size() != a.rows) throw InvalidArgument("matvec_transpose: size mismatch");
  Vector y(a.cols, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i)
    kernels::axpy(a.cols, x[i], a.row(i), y.data());
  return y;
}

DenseMatrix add_scaled(const DenseMatrix& a, double s, const DenseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw InvalidArgument("add_scaled: shape mismatch");
  DenseMatrix c = a;
  kernels::axpy(c.data.size(), s, b.data.data(), c.data.data());
  return c;
}

double frobenius_norm(const DenseMatrix& a) {
  return kernels::nrm2(a.data.size(), a.data.data());
}

double max_abs(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : a.data) m = std::max(m, std::abs(v));
  return m;
}

double trace(const DenseMatrix& a) {
  double t = 0.0;
  const std::size_t n = std::min(a.rows, a.cols);
  for (std::size_t i = 0; i < n; ++i) t += a(i, i);
  return t;
}

Vector column(const DenseMatrix& a, std::size_t j) {
  Vector v(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) v[i] = a(i, j);
  return v;
}

void set_column(DenseMatrix& a, std::size_t j, const Vector& v) {
  for (std::size_t i = 0; i < a.rows; ++i) a(i, j) = v[i];
}

DenseMatrix block(const DenseMatrix& a, std::size_t r0, std::size_t c0,
                  std::size_t nr, std::size_t nc) {
  DenseMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = a(r0 + i, c0 + j);
  return b;
}

DenseMatrix gauss_jordan_inverse(const DenseMatrix& a) {
  if (a.rows != a.cols) throw InvalidArgument("inverse: matrix not square");
  const std::size_t n = a.rows;
  DenseMatrix w = a;
  DenseMatrix inv = DenseMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(w(i, k)) > std::abs(w(piv, k))) piv = i;
    if (w(piv, k) == 0.0)
      throw InvalidArgument("inverse: matrix is singular");
    if (piv != k) {
      std::swap_ranges(w.row(k), w.row(k) + n, w.row(piv));
      std::swap_ranges(inv.row(k), inv.row(k) + n, inv.row(piv));
    }
    const double d = 1.0 / w(k, k);
    kernels::scal(n, d, w.row(k));
    kernels::scal(n, d, inv.row(k));
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = -w(i, k);
      if (f != 0.0) {
        kernels::axpy(n, f, w.row(k), w.row(i));
        kernels::axpy(n, f, inv.row(k), inv.row(i));
      }
    }
  }
  return inv;
}

} // namespace gsts
