#pragma once

#include <cstddef>

#include "gsts/dense.hpp"
#include "gsts/sparse.hpp"

namespace gsts {

// Envelope (skyline) Cholesky factorization of a sparse SPD matrix.
// Stores, per row, the contiguous segment from the first structural nonzero
// to the diagonal.  Exact on the envelope, so solve() is a direct method.
// Throws NotPositiveDefinite naming the failing pivot.
class SpdFactor {
 public:
  static SpdFactor compute(const SparseMatrix& a);

  Vector solve(const Vector& b) const;
  void solve_in_place(Vector& x) const;

  std::size_t size() const { return n_; }
  // sum of squared envelope widths; exposed for tests
  std::size_t profile() const { return vals_.size(); }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> start_;  // first stored column per row
  std::vector<std::size_t> offset_; // row begin in vals_, size n_+1
  std::vector<double> vals_;        // L rows, envelope-contiguous
  std::vector<double> diag_;        // L(i,i)
};

// Direct solve with a residual guarantee: envelope Cholesky, then (if the
// direct residual misses 1e-10 * ||b||) factor-preconditioned conjugate
// gradient refinement at tolerance 1e-12.  Throws NonConvergence if the
// refinement also stalls.
Vector spd_solve(const SparseMatrix& a, const Vector& b);
Vector spd_solve(const SparseMatrix& a, const SpdFactor& f, const Vector& b);

// Dense Cholesky (lower), for small SPD systems.
class DenseCholesky {
 public:
  static DenseCholesky compute(const DenseMatrix& a);
  Vector solve(const Vector& b) const;
  std::size_t size() const { return l_.rows; }

 private:
  DenseMatrix l_;
};

// LDL^T factorization of an SPD tridiagonal matrix.
class TridiagFactor {
 public:
  // a holds the tridiagonal entries (off-tridiagonal entries must be absent).
  static TridiagFactor compute(const SparseMatrix& a);
  Vector solve(const Vector& b) const;
  std::size_t size() const { return d_.size(); }

 private:
  Vector d_;   // pivots
  Vector sub_; // L subdiagonal, size n-1
};

} // namespace gsts
