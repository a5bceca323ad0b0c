#pragma once

#include <memory>
#include <optional>
#include <string>

#include "gsts/cholesky.hpp"
#include "gsts/problem.hpp"
#include "gsts/svd.hpp"

namespace gsts {

// Choice of the (2,2) splitting block B.
//
//   schur_exact     B = E^T M^{-1} E          (singular when E is rank
//                                              deficient; applied through
//                                              its pseudoinverse)
//   shifted_diag    B = I + E^T P^{-1} E,  P = diag(M)
//   shifted_tridiag B = I + E^T P^{-1} E,  P = tridiag(M)
//   gsor_diag       like shifted_diag, scaled by tau/nu_g
//   gsor_tridiag    like shifted_tridiag, scaled by tau/nu_g
//   custom_hpd      caller-provided symmetric positive definite matrix
//
// All variants are symmetric positive (semi)definite by construction when
// P is; build_b fails with NotPositiveDefinite otherwise.
enum class BKind {
  schur_exact,
  shifted_diag,
  shifted_tridiag,
  gsor_diag,
  gsor_tridiag,
  custom_hpd,
};

struct BChoice {
  BKind kind = BKind::schur_exact;
  double scale = 1.0;   // multiplies B; must be positive
  SparseMatrix custom;  // used by custom_hpd only
};

std::string b_kind_name(BKind k);

// Iteration parameters.  Requires omega1 >= 0, omega2 >= 0, not both zero,
// tau > 0.
struct GstsParams {
  double omega1 = 1.0;
  double omega2 = 1.0;
  double tau = 1.0;
  void validate() const;
};

// A built B block: dense or sparse storage plus the solve route
// (Cholesky for the definite variants, eigen-based pseudoinverse for the
// exact Schur complement).
class BOperator {
 public:
  std::size_t size() const { return q_; }
  bool singular() const { return singular_; }
  std::size_t rank() const { return rank_; }
  std::size_t null_dim() const { return singular_ ? q_ - rank_ : 0; }
  // Orthonormal basis vector k of the numerical null space (singular only).
  Vector null_basis_column(std::size_t k) const;

  // B^{-1} r or B^{+} r depending on the variant.
  Vector apply_inverse(const Vector& r) const;

  // Dense copy of B (materialized on construction; the systems this
  // library targets keep q modest).
  const DenseMatrix& dense() const { return dense_; }

 private:
  friend BOperator build_b(const SaddleSystem&, const BChoice&);
  std::size_t q_ = 0;
  bool singular_ = false;
  std::size_t rank_ = 0;
  DenseMatrix dense_;
  // exactly one of these is active
  std::optional<SpdFactor> sparse_chol_;
  std::optional<DenseCholesky> dense_chol_;
  std::optional<PseudoInverseFactor> pinv_;
  double solve_scale_ = 1.0; // folded into apply_inverse
};

// Builds the chosen B.  For schur_exact the Schur complement is formed
// densely through q solves with M (guarded to q <= 2000) and pseudoinverted
// with rank cutoff max(q,q)*eps*sigma_max.
BOperator build_b(const SaddleSystem& sys, const BChoice& choice);

// The generalized splitting preconditioner
//   B(w1,w2) = (B_c + w1 K_L) B_c^{o} (B_c + w2 K_U),  B_c = blockdiag(M, B)
// applied through its block factorization; each apply costs exactly two
// solves with M and one application of B^{o}.
class GstsPreconditioner {
 public:
  GstsPreconditioner(const SaddleSystem& sys, const BOperator& b,
                     double omega1, double omega2);

  std::size_t size() const { return sys_->n(); }
  double omega1() const { return w1_; }
  double omega2() const { return w2_; }
  const BOperator& b() const { return *b_; }
  const SpdFactor& m_factor() const { return m_chol_; }

  // z = B(w1,w2)^{o} r
  Vector apply(const Vector& r) const;

  // Dense B(w1,w2) = [[M, w2 E], [-w1 E^T, B - w1 w2 E^T M^{-1} E]].
  // Guarded to p+q <= 2000.
  DenseMatrix materialize() const;

 private:
  const SaddleSystem* sys_;
  const BOperator* b_;
  double w1_, w2_;
  SpdFactor m_chol_;
};

} // namespace gsts
