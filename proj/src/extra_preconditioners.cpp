#include "gsts/extra_preconditioners.hpp"

#include "gsts/errors.hpp"
#include "gsts/kernels.hpp"

namespace gsts {

namespace {

double checked_shift(double alpha) {
  if (!(alpha > 0.0))
    throw InvalidArgument("hss: shift must be positive");
  return alpha;
}

SparseMatrix shifted_m(const SparseMatrix& m, double alpha) {
  return add(1.0, m, alpha, sparse_identity(m.rows));
}

SparseMatrix shifted_normal(const SaddleSystem& sys, double alpha) {
  // alpha I + E^T E / alpha
  const Vector ones(sys.p(), 1.0);
  SparseMatrix ete = normal_product_diag(sys.e, ones);
  return add(1.0 / alpha, ete, alpha, sparse_identity(sys.q()));
}

} // namespace

HssPreconditioner::HssPreconditioner(const SaddleSystem& sys, double alpha)
    : sys_(&sys), alpha_(checked_shift(alpha)),
      m_shift_(SpdFactor::compute(shifted_m(sys.m, alpha))),
      schur_shift_(SpdFactor::compute(shifted_normal(sys, alpha))) {}

Vector HssPreconditioner::apply(const Vector& r) const {
  const std::size_t p = sys_->p(), q = sys_->q();
  if (r.size() != p + q) throw InvalidArgument("hss: size mismatch");
  // (alpha I + H) w = r
  Vector r1(r.begin(), r.begin() + p);
  const Vector w1 = m_shift_.solve(r1);
  Vector w2(r.begin() + p, r.end());
  kernels::scal(q, 1.0 / alpha_, w2.data());
  // (alpha I + S) z = w  via the (2,2) Schur complement
  Vector rhs2 = matvec_transpose(sys_->e, w1);
  for (std::size_t i = 0; i < q; ++i) rhs2[i] = w2[i] + rhs2[i] / alpha_;
  const Vector z2 = schur_shift_.solve(rhs2);
  Vector ez2 = matvec(sys_->e, z2);
  Vector z(p + q);
  for (std::size_t i = 0; i < p; ++i) z[i] = (w1[i] - ez2[i]) / alpha_;
  std::copy(z2.begin(), z2.end(), z.begin() + p);
  return z;
}

ConstraintPreconditioner::ConstraintPreconditioner(const SaddleSystem& sys,
                                                   PKind kind)
    : sys_(&sys), kind_(kind) {
  if (kind == PKind::diag) {
    pdiag_ = diagonal(sys.m);
    for (double v : pdiag_)
      if (!(v > 0.0))
        throw InvalidArgument("constraint preconditioner: diag(M) must be positive");
    SparseMatrix schur = normal_product_diag(sys.e, pdiag_);
    schur = add(1.0, schur, 1.0, sparse_identity(sys.q()));
    schur_sparse_ = SpdFactor::compute(schur);
  } else {
    ptri_ = TridiagFactor::compute(tridiagonal_part(sys.m));
    // dense Schur: tridiagonal inverses fill in
    const std::size_t p = sys.p(), q = sys.q();
    DenseMatrix s(q, q);
    Vector col(p);
    const SparseMatrix et = sparse_transpose(sys.e);
    for (std::size_t j = 0; j < q; ++j) {
      std::fill(col.begin(), col.end(), 0.0);
      for (std::size_t k = et.row_ptr[j]; k < et.row_ptr[j + 1]; ++k)
        col[et.col_idx[k]] = et.val[k];
      const Vector z = ptri_->solve(col);
      const Vector sj = matvec_transpose(sys.e, z);
      for (std::size_t i = 0; i < q; ++i) s(i, j) = sj[i];
      s(j, j) += 1.0;
    }
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = i + 1; j < q; ++j) {
        const double v = 0.5 * (s(i, j) + s(j, i));
        s(i, j) = v;
        s(j, i) = v;
      }
    schur_dense_ = DenseCholesky::compute(s);
  }
}

Vector ConstraintPreconditioner::apply_p_inverse(const Vector& x) const {
  if (kind_ == PKind::diag) {
    Vector y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] /= pdiag_[i];
    return y;
  }
  return ptri_->solve(x);
}

Vector ConstraintPreconditioner::apply(const Vector& r) const {
  const std::size_t p = sys_->p(), q = sys_->q();
  if (r.size() != p + q)
    throw InvalidArgument("constraint preconditioner: size mismatch");
  Vector r1(r.begin(), r.begin() + p);
  Vector r2(r.begin() + p, r.end());
  // (I + E^T P^{-1} E) z2 = r2 + E^T P^{-1} r1
  const Vector pr1 = apply_p_inverse(r1);
  Vector rhs2 = matvec_transpose(sys_->e, pr1);
  kernels::axpy(q, 1.0, r2.data(), rhs2.data());
  const Vector z2 =
      schur_sparse_ ? schur_sparse_->solve(rhs2) : schur_dense_->solve(rhs2);
  // z1 = P^{-1} (r1 - E z2)
  Vector t = matvec(sys_->e, z2);
  for (std::size_t i = 0; i < p; ++i) t[i] = r1[i] - t[i];
  const Vector z1 = apply_p_inverse(t);
  Vector z(p + q);
  std::copy(z1.begin(), z1.end(), z.begin());
  std::copy(z2.begin(), z2.end(), z.begin() + p);
  return z;
}

} // namespace gsts
