#pragma once

#include <optional>

#include "gsts/cholesky.hpp"
#include "gsts/problem.hpp"

namespace gsts {

// Shift-splitting preconditioner built from the Hermitian/skew split:
//   P = (alpha I + H)(alpha I + S) / ... applied factor by factor.
// The first factor is block diagonal; the second is solved through its
// (2,2) Schur complement alpha I + E^T E / alpha.
class HssPreconditioner {
 public:
  HssPreconditioner(const SaddleSystem& sys, double alpha);
  Vector apply(const Vector& r) const;
  double alpha() const { return alpha_; }

 private:
  const SaddleSystem* sys_;
  double alpha_;
  SpdFactor m_shift_;     // alpha I + M
  SpdFactor schur_shift_; // alpha I + E^T E / alpha
};

// Constraint preconditioner [[P, E], [-E^T, I]] with P = diag(M) or
// tridiag(M); solved through its Schur complement I + E^T P^{-1} E,
// factored once.
class ConstraintPreconditioner {
 public:
  enum class PKind { diag, tridiag };
  ConstraintPreconditioner(const SaddleSystem& sys, PKind kind);
  Vector apply(const Vector& r) const;

 private:
  Vector apply_p_inverse(const Vector& x) const;
  const SaddleSystem* sys_;
  PKind kind_;
  Vector pdiag_;
  std::optional<TridiagFactor> ptri_;
  std::optional<SpdFactor> schur_sparse_;
  std::optional<DenseCholesky> schur_dense_;
};

} // namespace gsts
