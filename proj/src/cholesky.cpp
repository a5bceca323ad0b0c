#include "gsts/cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsts/errors.hpp"
#include "gsts/kernels.hpp"

namespace gsts {

SpdFactor SpdFactor::compute(const SparseMatrix& a) {
  if (a.rows != a.cols)
    throw InvalidArgument("SpdFactor: matrix not square");
  const std::size_t n = a.rows;
  SpdFactor f;
  f.n_ = n;
  f.start_.assign(n, 0);
  f.offset_.assign(n + 1, 0);
  f.diag_.assign(n, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    std::size_t first = i;
    if (a.row_ptr[i] < a.row_ptr[i + 1])
      first = std::min<std::size_t>(i, a.col_idx[a.row_ptr[i]]);
    f.start_[i] = first;
    f.offset_[i + 1] = f.offset_[i] + (i - first + 1);
  }
  f.vals_.assign(f.offset_[n], 0.0);

  // scatter the lower triangle of a into the envelope
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const std::size_t j = a.col_idx[k];
      if (j <= i) f.vals_[f.offset_[i] + (j - f.start_[i])] = a.val[k];
    }

  // row-active factorization; fill stays inside the envelope
  for (std::size_t i = 0; i < n; ++i) {
    double* ri = f.vals_.data() + f.offset_[i];
    const std::size_t si = f.start_[i];
    for (std::size_t j = si; j < i; ++j) {
      const double* rj = f.vals_.data() + f.offset_[j];
      const std::size_t sj = f.start_[j];
      const std::size_t k0 = std::max(si, sj);
      const std::size_t len = (j > k0) ? (j - k0) : 0;
      double s = ri[j - si];
      if (len > 0) s -= kernels::dot(len, ri + (k0 - si), rj + (k0 - sj));
      ri[j - si] = s / f.diag_[j];
    }
    double d = ri[i - si];
    if (i > si) d -= kernels::dot(i - si, ri, ri);
    if (!(d > 0.0))
      throw NotPositiveDefinite(
          "cholesky: non-positive pivot at index " + std::to_string(i), i);
    f.diag_[i] = std::sqrt(d);
    ri[i - si] = f.diag_[i];
  }
  return f;
}

void SpdFactor::solve_in_place(Vector& x) const {
  if (x.size() != n_) throw InvalidArgument("SpdFactor::solve: size mismatch");
  // forward: L y = b
  for (std::size_t i = 0; i < n_; ++i) {
    const double* ri = vals_.data() + offset_[i];
    const std::size_t si = start_[i];
    double s = x[i];
    if (i > si) s -= kernels::dot(i - si, ri, x.data() + si);
    x[i] = s / diag_[i];
  }
  // backward: L^T x = y
  for (std::size_t i = n_; i-- > 0;) {
    const double* ri = vals_.data() + offset_[i];
    const std::size_t si = start_[i];
    x[i] /= diag_[i];
    if (i > si) kernels::axpy(i - si, -x[i], ri, x.data() + si);
  }
}

Vector SpdFactor::solve(const Vector& b) const {
  Vector x = b;
  solve_in_place(x);
  return x;
}

Vector spd_solve(const SparseMatrix& a, const SpdFactor& f, const Vector& b) {
  Vector x = f.solve(b);
  const double bn = kernels::nrm2(b.size(), b.data());
  Vector ax = matvec(a, x);
  Vector r = b;
  kernels::axpy(r.size(), -1.0, ax.data(), r.data());
  double rn = kernels::nrm2(r.size(), r.data());
  if (rn <= 1e-10 * bn) return x;

  // factor-preconditioned conjugate gradient refinement
  Vector z = f.solve(r);
  Vector p = z;
  double rz = kernels::dot(r.size(), r.data(), z.data());
  const double target = 1e-12 * bn;
  for (std::size_t it = 0; it < 500 && rn > target; ++it) {
    Vector q = matvec(a, p);
    const double pq = kernels::dot(p.size(), p.data(), q.data());
    if (pq <= 0.0) break;
    const double alpha = rz / pq;
    kernels::axpy(x.size(), alpha, p.data(), x.data());
    kernels::axpy(r.size(), -alpha, q.data(), r.data());
    rn = kernels::nrm2(r.size(), r.data());
    if (rn <= target) break;
    z = f.solve(r);
    const double rz_new = kernels::dot(r.size(), r.data(), z.data());
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
  }
  if (rn > 1e-10 * bn)
    throw NonConvergence("spd_solve: CG refinement failed to reach tolerance");
  return x;
}

Vector spd_solve(const SparseMatrix& a, const Vector& b) {
  return spd_solve(a, SpdFactor::compute(a), b);
}

DenseCholesky DenseCholesky::compute(const DenseMatrix& a) {
  if (a.rows != a.cols)
    throw InvalidArgument("DenseCholesky: matrix not square");
  const std::size_t n = a.rows;
  DenseCholesky f;
  f.l_ = DenseMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    if (j > 0) d -= kernels::dot(j, f.l_.row(j), f.l_.row(j));
    if (!(d > 0.0))
      throw NotPositiveDefinite(
          "dense cholesky: non-positive pivot at index " + std::to_string(j), j);
    const double dj = std::sqrt(d);
    f.l_(j, j) = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      if (j > 0) s -= kernels::dot(j, f.l_.row(i), f.l_.row(j));
      f.l_(i, j) = s / dj;
    }
  }
  return f;
}

Vector DenseCholesky::solve(const Vector& b) const {
  const std::size_t n = l_.rows;
  if (b.size() != n) throw InvalidArgument("DenseCholesky::solve: size mismatch");
  Vector x = b;
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    if (i > 0) s -= kernels::dot(i, l_.row(i), x.data());
    x[i] = s / l_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    x[i] /= l_(i, i);
    if (i > 0) kernels::axpy(i, -x[i], l_.row(i), x.data());
  }
  return x;
}

TridiagFactor TridiagFactor::compute(const SparseMatrix& a) {
  if (a.rows != a.cols)
    throw InvalidArgument("TridiagFactor: matrix not square");
  const std::size_t n = a.rows;
  Vector diag(n, 0.0), sub(n > 0 ? n - 1 : 0, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const std::size_t j = a.col_idx[k];
      if (j == i)
        diag[i] = a.val[k];
      else if (j + 1 == i)
        sub[j] = a.val[k];
      else if (j != i + 1)
        throw InvalidArgument("TridiagFactor: matrix is not tridiagonal");
    }
  TridiagFactor f;
  f.d_.assign(n, 0.0);
  f.sub_.assign(sub.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double d = diag[i];
    if (i > 0) d -= f.sub_[i - 1] * f.sub_[i - 1] * f.d_[i - 1];
    if (!(d > 0.0))
      throw NotPositiveDefinite(
          "tridiagonal factor: non-positive pivot at index " + std::to_string(i),
          i);
    f.d_[i] = d;
    if (i + 1 < n) f.sub_[i] = sub[i] / d;
  }
  return f;
}

Vector TridiagFactor::solve(const Vector& b) const {
  const std::size_t n = d_.size();
  if (b.size() != n) throw InvalidArgument("TridiagFactor::solve: size mismatch");
  Vector x = b;
  if (n == 0) return x;
  for (std::size_t i = 1; i < n; ++i) x[i] -= sub_[i - 1] * x[i - 1];
  for (std::size_t i = 0; i < n; ++i) x[i] /= d_[i];
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= sub_[i] * x[i + 1];
  return x;
}

} // namespace gsts
