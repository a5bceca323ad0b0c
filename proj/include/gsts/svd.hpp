#pragma once

#include <cstddef>

#include "gsts/dense.hpp"

namespace gsts {

// Full singular value decomposition a = u * diag(sigma) * v^T with
// u (m x m) and v (n x n) orthogonal and sigma descending, length min(m,n).
struct SvdFactor {
  DenseMatrix u;
  Vector sigma;
  DenseMatrix v;

  // Default numerical-rank cutoff: max(m, n) * eps * sigma[0].
  double default_rank_tol() const;
  std::size_t rank(double tol) const;
  std::size_t rank() const { return rank(default_rank_tol()); }
};

// One-sided Jacobi SVD.  Throws NonConvergence if the sweep budget is
// exhausted before the column inner products fall below the orthogonality
// threshold.
SvdFactor svd(const DenseMatrix& a);

// Symmetric eigendecomposition a = q * diag(lambda) * q^T, lambda ascending.
// Householder tridiagonalization followed by implicit-shift QL.
struct SymmetricEigen {
  DenseMatrix q;
  Vector lambda;
};
SymmetricEigen symmetric_eigen(const DenseMatrix& a);

// Moore-Penrose pseudoinverse held in factored form.
struct PseudoInverseFactor {
  SvdFactor factor;
  double tol = 0.0;
  std::size_t rank = 0;

  // Columns of v beyond rank span the (numerical) null space.
  Vector null_basis_column(std::size_t k) const;
  std::size_t null_dim() const { return factor.v.cols - rank; }
};

PseudoInverseFactor pseudo_inverse(const DenseMatrix& a);
PseudoInverseFactor pseudo_inverse(SvdFactor f, double tol);

// Minimum-norm least-squares application x = a^+ b (b has m entries,
// the result has n).
Vector pinv_apply(const PseudoInverseFactor& f, const Vector& b);

// Dense a^+ for test-sized matrices.
DenseMatrix pinv_materialize(const PseudoInverseFactor& f);

std::size_t rank_of(const DenseMatrix& a);
std::size_t rank_of(const DenseMatrix& a, double tol);

} // namespace gsts
