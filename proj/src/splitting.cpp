#include "gsts/splitting.hpp"

#include <cmath>

#include "gsts/errors.hpp"
#include "gsts/kernels.hpp"

namespace gsts {

std::string b_kind_name(BKind k) {
  switch (k) {
    case BKind::schur_exact: return "schur_exact";
    case BKind::shifted_diag: return "shifted_diag";
    case BKind::shifted_tridiag: return "shifted_tridiag";
    case BKind::gsor_diag: return "gsor_diag";
    case BKind::gsor_tridiag: return "gsor_tridiag";
    case BKind::custom_hpd: return "custom_hpd";
  }
  return "unknown";
}

void GstsParams::validate() const {
  if (omega1 < 0.0 || omega2 < 0.0)
    throw InvalidArgument("params: omega1 and omega2 must be nonnegative");
  if (omega1 == 0.0 && omega2 == 0.0)
    throw InvalidArgument("params: omega1 and omega2 must not both vanish");
  if (!(tau > 0.0)) throw InvalidArgument("params: tau must be positive");
}

Vector BOperator::null_basis_column(std::size_t k) const {
  if (!singular_ || !pinv_)
    throw InvalidArgument("BOperator: no null space for a definite B");
  return pinv_->null_basis_column(k);
}

Vector BOperator::apply_inverse(const Vector& r) const {
  if (r.size() != q_) throw InvalidArgument("BOperator: size mismatch");
  Vector z;
  if (pinv_) {
    z = pinv_apply(*pinv_, r);
  } else if (sparse_chol_) {
    z = sparse_chol_->solve(r);
  } else {
    z = dense_chol_->solve(r);
  }
  if (solve_scale_ != 1.0) kernels::scal(z.size(), solve_scale_, z.data());
  return z;
}

namespace {

// E^T M^{-1} E formed densely, one M solve per column of E.
DenseMatrix dense_schur(const SaddleSystem& sys, const SpdFactor& m_chol) {
  const std::size_t p = sys.p(), q = sys.q();
  DenseMatrix s(q, q);
  Vector col(p);
  for (std::size_t j = 0; j < q; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t k = sys.e.row_ptr[i]; k < sys.e.row_ptr[i + 1]; ++k)
        if (sys.e.col_idx[k] == j) col[i] = sys.e.val[k];
    Vector z = m_chol.solve(col);
    const Vector sj = matvec_transpose(sys.e, z);
    for (std::size_t i = 0; i < q; ++i) s(i, j) = sj[i];
  }
  // symmetrize away the solve roundoff
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j) {
      const double v = 0.5 * (s(i, j) + s(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

// B = scale * (I + E^T P^{-1} E) for tridiagonal P, formed densely via
// Thomas solves on the columns of E.
DenseMatrix dense_shifted_tridiag(const SaddleSystem& sys, double scale) {
  const SparseMatrix p_tri = tridiagonal_part(sys.m);
  const TridiagFactor p_fac = TridiagFactor::compute(p_tri);
  const std::size_t p = sys.p(), q = sys.q();
  DenseMatrix b(q, q);
  Vector col(p);
  for (std::size_t j = 0; j < q; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t k = sys.e.row_ptr[i]; k < sys.e.row_ptr[i + 1]; ++k)
        if (sys.e.col_idx[k] == j) col[i] = sys.e.val[k];
    const Vector z = p_fac.solve(col);
    const Vector bj = matvec_transpose(sys.e, z);
    for (std::size_t i = 0; i < q; ++i) b(i, j) = scale * bj[i];
    b(j, j) += scale;
  }
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j) {
      const double v = 0.5 * (b(i, j) + b(j, i));
      b(i, j) = v;
      b(j, i) = v;
    }
  return b;
}

} // namespace

BOperator build_b(const SaddleSystem& sys, const BChoice& choice) {
  if (!(choice.scale > 0.0))
    throw InvalidArgument("build_b: scale must be positive");
  const std::size_t q = sys.q();
  BOperator op;
  op.q_ = q;

  switch (choice.kind) {
    case BKind::schur_exact: {
      if (q > 2000)
        throw InvalidArgument(
            "build_b: exact Schur complement is materialized densely and is "
            "limited to q <= 2000");
      const SpdFactor m_chol = SpdFactor::compute(sys.m);
      op.dense_ = dense_schur(sys, m_chol);
      if (choice.scale != 1.0)
        kernels::scal(op.dense_.data.size(), choice.scale, op.dense_.data.data());
      PseudoInverseFactor f = pseudo_inverse(op.dense_);
      op.rank_ = f.rank;
      op.singular_ = f.rank < q;
      op.pinv_ = std::move(f);
      break;
    }
    case BKind::shifted_diag:
    case BKind::gsor_diag: {
      const Vector d = diagonal(sys.m);
      SparseMatrix b = normal_product_diag(sys.e, d);
      b = add(choice.scale, b, choice.scale, sparse_identity(q));
      op.dense_ = to_dense(b);
      op.sparse_chol_ = SpdFactor::compute(b);
      op.rank_ = q;
      break;
    }
    case BKind::shifted_tridiag:
    case BKind::gsor_tridiag: {
      op.dense_ = dense_shifted_tridiag(sys, choice.scale);
      op.dense_chol_ = DenseCholesky::compute(op.dense_);
      op.rank_ = q;
      break;
    }
    case BKind::custom_hpd: {
      if (choice.custom.rows != q || choice.custom.cols != q)
        throw InvalidArgument("build_b: custom B has the wrong shape");
      if (!is_symmetric(choice.custom, 1e-12 * (1.0 + frobenius_norm(choice.custom))))
        throw InvalidArgument("build_b: custom B is not symmetric");
      SparseMatrix b = choice.custom;
      if (choice.scale != 1.0)
        b = add(choice.scale, b, 0.0, sparse_identity(q));
      op.dense_ = to_dense(b);
      op.sparse_chol_ = SpdFactor::compute(b);
      op.rank_ = q;
      break;
    }
  }
  return op;
}

GstsPreconditioner::GstsPreconditioner(const SaddleSystem& sys,
                                       const BOperator& b, double omega1,
                                       double omega2)
    : sys_(&sys), b_(&b), w1_(omega1), w2_(omega2),
      m_chol_(SpdFactor::compute(sys.m)) {
  if (b.size() != sys.q())
    throw InvalidArgument("preconditioner: B size disagrees with the system");
  if (omega1 < 0.0 || omega2 < 0.0)
    throw InvalidArgument("preconditioner: relaxation weights must be >= 0");
}

Vector GstsPreconditioner::apply(const Vector& r) const {
  const std::size_t p = sys_->p(), q = sys_->q();
  if (r.size() != p + q) throw InvalidArgument("preconditioner: size mismatch");

  // Block solve of (B_c + w1 K_L) B_c^o (B_c + w2 K_U) z = r:
  //   w  = M^{-1} r1                      (first M solve)
  //   z2 = B^o (w1 E^T w + r2)            (one B application)
  //   z1 = w - w2 M^{-1} (E z2)           (second M solve)
  Vector r1(r.begin(), r.begin() + p);
  Vector w = m_chol_.solve(r1);

  Vector t = matvec_transpose(sys_->e, w);
  kernels::scal(q, w1_, t.data());
  for (std::size_t i = 0; i < q; ++i) t[i] += r[p + i];
  const Vector z2 = b_->apply_inverse(t);

  Vector z(p + q);
  if (w2_ != 0.0) {
    Vector ez2 = matvec(sys_->e, z2);
    Vector corr = m_chol_.solve(ez2);
    for (std::size_t i = 0; i < p; ++i) z[i] = w[i] - w2_ * corr[i];
  } else {
    std::copy(w.begin(), w.end(), z.begin());
  }
  std::copy(z2.begin(), z2.end(), z.begin() + p);
  return z;
}

DenseMatrix GstsPreconditioner::materialize() const {
  const std::size_t p = sys_->p(), q = sys_->q();
  if (p + q > 2000)
    throw InvalidArgument("materialize: dense form is limited to p+q <= 2000");

  DenseMatrix out(p + q, p + q);
  const DenseMatrix md = to_dense(sys_->m);
  const DenseMatrix ed = to_dense(sys_->e);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) out(i, j) = md(i, j);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      out(i, p + j) = w2_ * ed(i, j);
      out(p + j, i) = -w1_ * ed(i, j);
    }

  // lower-right block: B - w1 w2 E^T M^{-1} E
  const SpdFactor m_chol = SpdFactor::compute(sys_->m);
  DenseMatrix s(q, q);
  for (std::size_t j = 0; j < q; ++j) {
    const Vector col = column(ed, j);
    const Vector z = m_chol.solve(col);
    const Vector sj = matvec_transpose(sys_->e, z);
    for (std::size_t i = 0; i < q; ++i) s(i, j) = sj[i];
  }
  const DenseMatrix& b = b_->dense();
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      out(p + i, p + j) = b(i, j) - w1_ * w2_ * s(i, j);
  return out;
}

} // namespace gsts
